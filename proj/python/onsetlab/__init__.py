"""Music onset detection: OSS estimation, chirp group delay smoothing,
valley-peak-distance peak picking, and evaluation utilities."""

from ._onsetlab import (
    AudioBuffer,
    DomainError,
    IoError,
    OnsetStrengthSignal,
    bench,
    cgd_smooth,
    chirp_group_delay,
    detect,
    find_peaks_valleys,
    frames_to_times,
    load_audio,
    load_external_oss,
    log_filterbank,
    match_onsets,
    max_filter_freq,
    oss_spectral_flux,
    oss_stsa,
    oss_superflux,
    parse_annotations,
    preset_names,
    save_external_oss,
    stft_magnitude,
    vpd_pick,
    write_wav,
)

__all__ = [
    "AudioBuffer",
    "DomainError",
    "IoError",
    "OnsetStrengthSignal",
    "bench",
    "cgd_smooth",
    "chirp_group_delay",
    "detect",
    "find_peaks_valleys",
    "frames_to_times",
    "load_audio",
    "load_external_oss",
    "log_filterbank",
    "match_onsets",
    "max_filter_freq",
    "oss_spectral_flux",
    "oss_stsa",
    "oss_superflux",
    "parse_annotations",
    "preset_names",
    "save_external_oss",
    "stft_magnitude",
    "vpd_pick",
    "write_wav",
]
