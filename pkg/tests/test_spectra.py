import warnings

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from srfreq.datasets import natural_test_image
from srfreq.errors import ParameterError, ShapeError
from srfreq.image import ImageF
from srfreq.kernels import Window, make_sinc_kernel
from srfreq.metrics import fsds, ssim
from srfreq.spectra import (
    conv2,
    default_embed_strength,
    default_message_mask,
    embed_spectral_message,
    spectrum_view,
    verify_periodic_extension,
)
from srfreq.transforms import dft2, fftshift


class TestSpectrumView:
    def test_constant_image_single_center_peak(self):
        view = spectrum_view(np.full((8, 8), 0.5))
        amp = view.amplitude.copy()
        assert amp[4, 4] > 0
        amp[4, 4] = 0.0
        assert np.max(amp) < 1e-12

    def test_origin_impulse_flat_amplitude(self):
        x = np.zeros((8, 8))
        x[0, 0] = 1.0
        view = spectrum_view(x)
        assert np.ptp(view.amplitude) < 1e-12

    def test_shifted_impulse_amplitude_invariant_phase_ramp(self):
        a = np.zeros((8, 8))
        a[0, 0] = 1.0
        b = np.zeros((8, 8))
        b[0, 3] = 1.0
        va, vb = spectrum_view(a), spectrum_view(b)
        assert np.max(np.abs(va.amplitude - vb.amplitude)) < 1e-12
        # shift theorem: phase is a linear ramp along the shifted axis
        spec = fftshift(dft2(b)).data
        cols = np.arange(8) - 4
        expected = np.exp(-2j * np.pi * cols * 3 / 8)
        np.testing.assert_allclose(spec[4, :], expected, atol=1e-12)

    def test_phase_range(self):
        rng = np.random.default_rng(0)
        view = spectrum_view(rng.random((9, 7)))
        assert np.all(view.phase > -np.pi - 1e-12)
        assert np.all(view.phase <= np.pi + 1e-12)


class TestPeriodicExtension:
    def test_exhaustive_identity_sweep(self):
        rng = np.random.default_rng(1)
        worst = 0.0
        for length in range(2, 65):
            x = rng.standard_normal(length)
            for factor in (2, 3, 4):
                worst = max(worst, verify_periodic_extension(x, factor))
        assert worst < 1e-9

    def test_delta_signal(self):
        x = np.zeros(8)
        x[0] = 1.0
        assert verify_periodic_extension(x, 3) < 1e-12

    def test_factor_validation(self):
        with pytest.raises(ParameterError):
            verify_periodic_extension(np.ones(4), 1)


@settings(max_examples=50, deadline=None)
@given(
    length=st.integers(min_value=2, max_value=64),
    factor=st.integers(min_value=2, max_value=4),
    seed=st.integers(min_value=0, max_value=2**31),
)
def test_periodic_extension_property(length, factor, seed):
    x = np.random.default_rng(seed).standard_normal(length)
    assert verify_periodic_extension(x, factor) < 1e-9


class TestEmbedSpectralMessage:
    def _image(self, seed=11):
        return natural_test_image(seed, 96, 128)

    def _mask(self, img, band):
        return default_message_mask(img.height, img.width, band)

    def test_zero_strength_is_identity(self):
        img = self._image()
        band = min(img.height, img.width) // 4
        out = embed_spectral_message(img, self._mask(img, band), band, 0.0)
        assert np.array_equal(out.data, img.data)

    def test_masked_bins_brighten_by_strength(self):
        img = self._image()
        band = min(img.height, img.width) // 4
        mask = self._mask(img, band)
        strength = default_embed_strength(img, band)
        out = embed_spectral_message(img, mask, band, strength)
        before = np.abs(fftshift(dft2(img.channel(0))).data)
        after = np.abs(fftshift(dft2(out.channel(0))).data)
        gain = (after - before)[mask]
        assert np.min(gain) >= 0.9 * strength

    def test_output_stays_real(self):
        img = self._image(12)
        band = min(img.height, img.width) // 4
        strength = default_embed_strength(img, band)
        with warnings.catch_warnings():
            warnings.simplefilter("error")  # idft2 warns on imaginary residue
            embed_spectral_message(img, self._mask(img, band), band, strength)

    def test_mask_touching_dc_rejected(self):
        img = self._image()
        mask = np.zeros((img.height, img.width), dtype=bool)
        mask[img.height // 2, img.width // 2] = True
        with pytest.raises(ParameterError):
            embed_spectral_message(img, mask, 8, 1.0)

    def test_mask_inside_band_rejected(self):
        img = self._image()
        mask = np.zeros((img.height, img.width), dtype=bool)
        mask[img.height // 2 + 3, img.width // 2] = True
        with pytest.raises(ParameterError):
            embed_spectral_message(img, mask, 8, 1.0)

    def test_wrong_mask_shape_rejected(self):
        img = self._image()
        with pytest.raises(ShapeError):
            embed_spectral_message(img, np.zeros((4, 4), bool), 8, 1.0)

    def test_ssim_blind_fsds_sensitive_split(self):
        # tampered vs untampered file pipeline: SSIM barely moves while the
        # spectral-distribution score collapses
        img = self._image(13)
        band = min(img.height, img.width) // 4
        strength = default_embed_strength(img, band)
        embedded = embed_spectral_message(img, self._mask(img, band), band, strength)

        def roundtrip(x):
            return ImageF(np.round(np.clip(x.data, 0.0, 1.0) * 255) / 255)

        clean_file, emb_file = roundtrip(img), roundtrip(embedded)
        d_ssim = ssim(img, clean_file) - ssim(img, emb_file)
        d_fsds = fsds(img, clean_file) - fsds(img, emb_file)
        assert abs(d_ssim) < 0.01
        assert d_fsds > 3.0
        assert ssim(img, emb_file) > 0.99


class TestConv2:
    def test_delta_kernel_identity(self):
        x = np.random.default_rng(2).random((10, 12))
        delta = np.zeros((5, 5))
        delta[2, 2] = 1.0
        for padding in ("zero", "reflect"):
            assert np.array_equal(conv2(x, delta, padding), x)

    def test_matches_frequency_route(self):
        # convolution theorem oracle: zero-pad kernel, multiply spectra
        rng = np.random.default_rng(3)
        x = rng.random((24, 24))
        kernel = make_sinc_kernel(1.3, Window.HANN, 4)
        ours = conv2(x, kernel, "zero")
        pad = 4
        big = np.zeros((32, 32))
        big[: x.shape[0] + 8, : x.shape[1] + 8][pad : pad + 24, pad : pad + 24] = x
        kbig = np.zeros((32, 32))
        kbig[:9, :9] = kernel.taps
        full = np.fft.ifft2(np.fft.fft2(big) * np.fft.fft2(kbig)).real
        freq_route = full[2 * pad : 2 * pad + 24, 2 * pad : 2 * pad + 24]
        interior = np.abs(ours - freq_route)[6:-6, 6:-6]
        assert np.max(interior) < 1e-5

    def test_shift_equivariance_exact(self):
        rng = np.random.default_rng(4)
        x = rng.random((16, 16))
        shifted = np.roll(x, (2, 1), axis=(0, 1))
        kernel = make_sinc_kernel(2.0, Window.HAMMING, 3)
        a = conv2(shifted, kernel, "zero")
        b = np.roll(conv2(x, kernel, "zero"), (2, 1), axis=(0, 1))
        assert np.array_equal(a[5:-5, 5:-5], b[5:-5, 5:-5])

    def test_symmetric_kernel_equals_correlation(self):
        x = np.random.default_rng(5).random((12, 12))
        kernel = make_sinc_kernel(1.0, Window.BLACKMAN, 3)
        flipped = kernel.taps[::-1, ::-1]
        assert np.array_equal(conv2(x, kernel), conv2(x, flipped))

    def test_even_kernel_rejected(self):
        with pytest.raises(ParameterError):
            conv2(np.ones((8, 8)), np.ones((4, 4)))

    def test_reflect_padding_with_oversized_kernel_rejected(self):
        with pytest.raises(ParameterError):
            conv2(np.ones((3, 3)), np.ones((9, 9)), "reflect")
