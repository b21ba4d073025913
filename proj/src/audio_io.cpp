#include "onsetlab/audio_io.hpp"

#include <cstdint>
#include <cstring>
#include <fstream>
#include <sstream>
#include <vector>

namespace onsetlab {

namespace {

constexpr uint16_t kFormatPcm = 1;
constexpr uint16_t kFormatFloat = 3;
constexpr uint16_t kFormatExtensible = 0xFFFE;

uint32_t read_u32(const uint8_t* p) {
  return static_cast<uint32_t>(p[0]) | (static_cast<uint32_t>(p[1]) << 8) |
         (static_cast<uint32_t>(p[2]) << 16) |
         (static_cast<uint32_t>(p[3]) << 24);
}

uint16_t read_u16(const uint8_t* p) {
  return static_cast<uint16_t>(p[0] | (p[1] << 8));
}

double decode_sample(const uint8_t* p, uint16_t bits, uint16_t format) {
  if (format == kFormatFloat) {
    float f;
    std::memcpy(&f, p, 4);
    return static_cast<double>(f);
  }
  switch (bits) {
    case 16: {
      int16_t v = static_cast<int16_t>(p[0] | (p[1] << 8));
      return v / 32768.0;
    }
    case 24: {
      int32_t v = (p[0] << 8) | (p[1] << 16) |
                  (static_cast<int32_t>(static_cast<int8_t>(p[2])) << 24);
      return (v >> 8) / 8388608.0;
    }
    case 32: {
      int32_t v;
      std::memcpy(&v, p, 4);
      return v / 2147483648.0;
    }
    default:
      return 0.0;
  }
}

}  // namespace

AudioBuffer load_audio(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("FileNotFound: " + path);
  std::vector<uint8_t> data((std::istreambuf_iterator<char>(in)),
                            std::istreambuf_iterator<char>());
  if (data.size() < 12 || std::memcmp(data.data(), "RIFF", 4) != 0 ||
      std::memcmp(data.data() + 8, "WAVE", 4) != 0) {
    throw IoError("UnsupportedEncoding: not a RIFF/WAVE file: " + path);
  }

  uint16_t format = 0, channels = 0, bits = 0;
  uint32_t sample_rate = 0;
  const uint8_t* payload = nullptr;
  std::size_t payload_size = 0;

  // Chunk walk; chunks are word-aligned.
  std::size_t pos = 12;
  while (pos + 8 <= data.size()) {
    const char* id = reinterpret_cast<const char*>(data.data() + pos);
    uint32_t size = read_u32(data.data() + pos + 4);
    std::size_t body = pos + 8;
    if (body + size > data.size()) size = static_cast<uint32_t>(data.size() - body);
    if (std::memcmp(id, "fmt ", 4) == 0 && size >= 16) {
      const uint8_t* f = data.data() + body;
      format = read_u16(f);
      channels = read_u16(f + 2);
      sample_rate = read_u32(f + 4);
      bits = read_u16(f + 14);
      if (format == kFormatExtensible && size >= 40) {
        // wFormatTag lives in the GUID's first two bytes.
        format = read_u16(f + 24);
      }
    } else if (std::memcmp(id, "data", 4) == 0) {
      payload = data.data() + body;
      payload_size = size;
    }
    pos = body + size + (size & 1);
  }

  if (payload == nullptr || channels == 0 || sample_rate == 0) {
    throw IoError("UnsupportedEncoding: missing fmt/data chunk: " + path);
  }
  if (format == kFormatFloat) {
    if (bits != 32)
      throw IoError("UnsupportedEncoding: only 32-bit float supported");
  } else if (format == kFormatPcm) {
    if (bits != 16 && bits != 24 && bits != 32)
      throw IoError("UnsupportedEncoding: unsupported PCM bit depth " +
                    std::to_string(bits));
  } else {
    throw IoError("UnsupportedEncoding: non-PCM format tag " +
                  std::to_string(format));
  }

  const std::size_t bytes_per_sample = bits / 8;
  const std::size_t frame_bytes = bytes_per_sample * channels;
  const std::size_t n_frames = payload_size / frame_bytes;
  if (n_frames == 0) throw IoError("EmptyStream: no samples in " + path);

  AudioBuffer out;
  out.sample_rate = static_cast<int>(sample_rate);
  out.samples.resize(n_frames);
  for (std::size_t i = 0; i < n_frames; ++i) {
    double acc = 0.0;
    for (uint16_t c = 0; c < channels; ++c) {
      acc += decode_sample(payload + i * frame_bytes + c * bytes_per_sample,
                           bits, format);
    }
    out.samples[i] = acc / channels;
  }
  return out;
}

void write_wav(const std::string& path, const AudioBuffer& audio,
               bool float32) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("FileNotFound: cannot open for writing: " + path);

  const uint16_t bits = float32 ? 32 : 16;
  const uint16_t format = float32 ? kFormatFloat : kFormatPcm;
  const uint32_t data_size =
      static_cast<uint32_t>(audio.samples.size() * (bits / 8));
  const uint32_t byte_rate = audio.sample_rate * (bits / 8);

  auto put_u32 = [&](uint32_t v) {
    char b[4] = {static_cast<char>(v), static_cast<char>(v >> 8),
                 static_cast<char>(v >> 16), static_cast<char>(v >> 24)};
    out.write(b, 4);
  };
  auto put_u16 = [&](uint16_t v) {
    char b[2] = {static_cast<char>(v), static_cast<char>(v >> 8)};
    out.write(b, 2);
  };

  out.write("RIFF", 4);
  put_u32(36 + data_size);
  out.write("WAVE", 4);
  out.write("fmt ", 4);
  put_u32(16);
  put_u16(format);
  put_u16(1);  // mono
  put_u32(static_cast<uint32_t>(audio.sample_rate));
  put_u32(byte_rate);
  put_u16(static_cast<uint16_t>(bits / 8));
  put_u16(bits);
  out.write("data", 4);
  put_u32(data_size);

  for (double s : audio.samples) {
    if (float32) {
      float f = static_cast<float>(s);
      char b[4];
      std::memcpy(b, &f, 4);
      out.write(b, 4);
    } else {
      double clamped = s < -1.0 ? -1.0 : (s > 1.0 ? 1.0 : s);
      int v = static_cast<int>(clamped * 32767.0);
      put_u16(static_cast<uint16_t>(static_cast<int16_t>(v)));
    }
  }
}

OnsetStrengthSignal load_external_oss(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("FileNotFound: " + path);

  std::string line;
  if (!std::getline(in, line)) throw IoError("MalformedHeader: empty file");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  const std::string key = "hop_seconds=";
  if (line.rfind(key, 0) != 0)
    throw IoError("MalformedHeader: expected 'hop_seconds=', got '" + line +
                  "'");
  OnsetStrengthSignal oss;
  try {
    std::size_t used = 0;
    oss.hop_seconds = std::stod(line.substr(key.size()), &used);
    if (used != line.size() - key.size()) throw std::invalid_argument("");
  } catch (const std::exception&) {
    throw IoError("MalformedHeader: bad hop value in '" + line + "'");
  }
  if (oss.hop_seconds <= 0)
    throw IoError("MalformedHeader: hop_seconds must be > 0");

  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    try {
      std::size_t used = 0;
      oss.values.push_back(std::stod(line, &used));
      if (used != line.size()) throw std::invalid_argument("");
    } catch (const std::exception&) {
      throw IoError("NonNumericLine: '" + line + "'");
    }
  }
  if (oss.values.empty()) throw IoError("EmptyStream: OSS has no values");
  return oss;
}

void save_external_oss(const std::string& path,
                       const OnsetStrengthSignal& oss) {
  std::ofstream out(path);
  if (!out) throw IoError("FileNotFound: cannot open for writing: " + path);
  std::ostringstream ss;
  ss.precision(17);
  ss << "hop_seconds=" << oss.hop_seconds << "\n";
  for (double v : oss.values) ss << v << "\n";
  out << ss.str();
}

}  // namespace onsetlab
