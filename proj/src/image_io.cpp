#include "gait/image_io.h"

#include <png.h>

#include <algorithm>
#include <cctype>
#include <fstream>
#include <iterator>
#include <string>

namespace gait {
namespace {

std::string lower_extension(const std::filesystem::path& path) {
  std::string ext = path.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return std::tolower(c); });
  return ext;
}

class PgmHeaderReader {
 public:
  PgmHeaderReader(const std::vector<unsigned char>& bytes, const std::filesystem::path& path)
      : bytes_(bytes), path_(path) {}

  std::string token() {
    skip_space_and_comments();
    std::string out;
    while (pos_ < bytes_.size() && !std::isspace(bytes_[pos_])) {
      out.push_back(static_cast<char>(bytes_[pos_++]));
    }
    if (out.empty()) fail("truncated header");
    return out;
  }

  int number() {
    const std::string t = token();
    if (!std::all_of(t.begin(), t.end(), [](unsigned char c) { return std::isdigit(c); })) {
      fail("non-numeric header field '" + t + "'");
    }
    try {
      return std::stoi(t);
    } catch (const std::exception&) {
      fail("header field out of range '" + t + "'");
    }
  }

  // Exactly one whitespace byte separates the header from the raster.
  std::size_t raster_offset() {
    if (pos_ >= bytes_.size() || !std::isspace(bytes_[pos_])) fail("missing raster separator");
    return pos_ + 1;
  }

  [[noreturn]] void fail(const std::string& what) const {
    throw DataError(path_.string() + ": malformed PGM: " + what);
  }

 private:
  void skip_space_and_comments() {
    while (pos_ < bytes_.size()) {
      if (std::isspace(bytes_[pos_])) {
        ++pos_;
      } else if (bytes_[pos_] == '#') {
        while (pos_ < bytes_.size() && bytes_[pos_] != '\n') ++pos_;
      } else {
        break;
      }
    }
  }

  const std::vector<unsigned char>& bytes_;
  const std::filesystem::path& path_;
  std::size_t pos_ = 0;
};

}  // namespace

GrayImage read_pgm(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open image file: " + path.string());
  const std::vector<unsigned char> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());

  PgmHeaderReader header(bytes, path);
  if (header.token() != "P5") header.fail("expected magic P5");
  const int width = header.number();
  const int height = header.number();
  const int max_value = header.number();
  if (width <= 0 || height <= 0) header.fail("non-positive dimensions");
  if (max_value <= 0 || max_value > 65535) header.fail("max value out of range");
  const std::size_t offset = header.raster_offset();

  const std::size_t bytes_per_sample = max_value > 255 ? 2 : 1;
  const std::size_t count = static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
  if (bytes.size() < offset + count * bytes_per_sample) header.fail("truncated raster");

  GrayImage image{Grid<std::uint16_t>(width, height), max_value};
  auto out = image.pixels.values();
  for (std::size_t i = 0; i < count; ++i) {
    if (bytes_per_sample == 1) {
      out[i] = bytes[offset + i];
    } else {
      out[i] = static_cast<std::uint16_t>((bytes[offset + 2 * i] << 8) | bytes[offset + 2 * i + 1]);
    }
    if (out[i] > max_value) header.fail("sample exceeds max value");
  }
  return image;
}

void write_pgm(const std::filesystem::path& path, const Grid<std::uint8_t>& pixels) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write image file: " + path.string());
  out << "P5\n" << pixels.width() << ' ' << pixels.height() << "\n255\n";
  const auto values = pixels.values();
  out.write(reinterpret_cast<const char*>(values.data()), static_cast<std::streamsize>(values.size()));
  if (!out) throw DataError("failed writing image file: " + path.string());
}

GrayImage read_png(const std::filesystem::path& path) {
  png_image png{};
  png.version = PNG_IMAGE_VERSION;
  if (!png_image_begin_read_from_file(&png, path.string().c_str())) {
    throw DataError(path.string() + ": cannot decode PNG: " + png.message);
  }
  png.format = PNG_FORMAT_GRAY;
  std::vector<std::uint8_t> buffer(PNG_IMAGE_SIZE(png));
  if (!png_image_finish_read(&png, nullptr, buffer.data(), 0, nullptr)) {
    const std::string message = png.message;
    png_image_free(&png);
    throw DataError(path.string() + ": cannot decode PNG: " + message);
  }
  const int width = static_cast<int>(png.width);
  const int height = static_cast<int>(png.height);
  std::vector<std::uint16_t> samples(buffer.begin(), buffer.end());
  return GrayImage{Grid<std::uint16_t>(width, height, std::move(samples)), 255};
}

bool is_supported_frame_file(const std::filesystem::path& path) {
  const std::string ext = lower_extension(path);
  return ext == ".pgm" || ext == ".png";
}

GrayImage read_gray_image(const std::filesystem::path& path) {
  const std::string ext = lower_extension(path);
  if (ext == ".pgm") return read_pgm(path);
  if (ext == ".png") return read_png(path);
  throw DataError("unsupported frame file (expected .pgm or .png): " + path.string());
}

}  // namespace gait
