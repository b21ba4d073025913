import json
import math
import os
import subprocess
import sys

import pytest

MODULE_DIR = os.environ.get("ONSETLAB_MODULE_DIR")
if MODULE_DIR:
    sys.path.insert(0, MODULE_DIR)

ol = pytest.importorskip("_onsetlab")

CLI = os.environ.get("ONSETLAB_CLI")


def click_train(n_events=6, spacing=0.5, fs=44100):
    import random

    rng = random.Random(12345)
    n = int((0.25 + n_events * spacing + 0.25) * fs)
    samples = [rng.gauss(0.0, 10 ** (-30 / 20)) for _ in range(n)]
    truth = []
    for e in range(n_events):
        t0 = 0.25 + e * spacing
        truth.append(t0)
        start = int(t0 * fs)
        for i in range(int(0.05 * fs)):
            if start + i >= n:
                break
            env = math.exp(-(i / fs) / 0.01)
            samples[start + i] += env * rng.gauss(0.0, 0.5)
    return ol.AudioBuffer(samples, fs), truth


def test_detect_click_train():
    audio, truth = click_train()
    onsets = ol.detect(audio, "4012")
    scores = ol.match_onsets(truth, list(onsets), 0.05)
    assert scores["f1"] == 1.0


def test_oss_and_smoothing_shapes():
    audio, _ = click_train(n_events=3)
    mag, hop_s, bin_hz = ol.stft_magnitude(audio, frame_ms=40.0, hop_ms=10.0)
    assert mag.ndim == 2 and mag.shape[0] > 0
    assert hop_s == pytest.approx(0.01)
    assert bin_hz > 0

    oss = ol.oss_stsa(mag, hop_s)
    assert len(oss) == mag.shape[0]
    smoothed = ol.cgd_smooth(oss, radius=1.010)
    assert len(smoothed) == len(oss)
    assert all(math.isfinite(v) for v in smoothed.values)


def test_filterbank_and_superflux():
    audio, _ = click_train(n_events=2)
    mag, hop_s, bin_hz = ol.stft_magnitude(audio)
    banded, centers = ol.log_filterbank(mag, hop_s, bin_hz)
    assert banded.shape == (mag.shape[0], len(centers))
    oss = ol.oss_superflux(banded, hop_s)
    assert min(oss.values) >= 0.0


def test_vpd_hand_trace():
    oss = ol.OnsetStrengthSignal([2.0, 0.0, 1.0, 0.5, 4.0, 1.0], 0.01)
    assert list(ol.vpd_pick(oss, mu_scale=0.8)) == [3]
    peaks, valleys = ol.find_peaks_valleys([0.0, 1.0, 0.0, 2.0, 0.0])
    assert list(peaks) == [1, 3]
    assert list(valleys) == [0, 2]


def test_errors_are_python_exceptions():
    with pytest.raises(OSError):
        ol.load_audio("/nonexistent/file.wav")
    with pytest.raises(ValueError):
        ol.chirp_group_delay([1.0, 0.0], 0.0, 4)


@pytest.mark.skipif(not CLI, reason="CLI path not provided")
def test_cli_detect_roundtrip(tmp_path):
    audio, truth = click_train(n_events=4)
    wav = tmp_path / "clicks.wav"
    ol.write_wav(str(wav), audio)

    out = subprocess.run(
        [CLI, "detect", str(wav), "--preset", "4012", "--format", "json"],
        capture_output=True,
        text=True,
        check=True,
    )
    payload = json.loads(out.stdout)
    onsets = payload["onsets"]
    scores = ol.match_onsets(truth, onsets, 0.05)
    assert scores["f1"] == 1.0


@pytest.mark.skipif(not CLI, reason="CLI path not provided")
def test_cli_missing_file_exit_code():
    out = subprocess.run(
        [CLI, "detect", "/nonexistent/audio.wav"],
        capture_output=True,
        text=True,
    )
    assert out.returncode == 1
