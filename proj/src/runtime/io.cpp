#include "chromac/runtime/io.hpp"

#include <png.h>

#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <memory>

#include "chromac/error.hpp"

namespace chromac::runtime {

static_assert(std::endian::native == std::endian::little, "the .cten reader assumes a little-endian host");

namespace {

constexpr char kMagic[4] = {'C', 'T', 'E', 'N'};
constexpr std::uint32_t kVersion = 1;

struct PngImage {
  png_image img{};
  PngImage() {
    img.version = PNG_IMAGE_VERSION;
  }
  ~PngImage() { png_image_free(&img); }
};

}  // namespace

Tensor load_png(const std::filesystem::path& path) {
  PngImage p;
  if (!png_image_begin_read_from_file(&p.img, path.c_str())) {
    throw IoError("cannot read PNG " + path.string() + ": " + p.img.message);
  }
  if ((p.img.format & PNG_FORMAT_FLAG_LINEAR) != 0 || (p.img.format & PNG_FORMAT_FLAG_COLORMAP) != 0 ||
      (p.img.format & PNG_FORMAT_FLAG_COLOR) == 0) {
    throw IoError(path.string() + " is not an 8-bit RGB PNG");
  }
  // Reading RGBA as RGB would composite onto a background; read it whole and drop alpha.
  const bool alpha = (p.img.format & PNG_FORMAT_FLAG_ALPHA) != 0;
  p.img.format = alpha ? PNG_FORMAT_RGBA : PNG_FORMAT_RGB;
  const std::size_t w = p.img.width;
  const std::size_t h = p.img.height;
  std::vector<png_byte> buf(PNG_IMAGE_SIZE(p.img));
  if (!png_image_finish_read(&p.img, nullptr, buf.data(), 0, nullptr)) {
    throw IoError("cannot decode PNG " + path.string() + ": " + p.img.message);
  }
  const std::size_t stride = alpha ? 4 : 3;
  Tensor t(Shape{static_cast<std::int64_t>(h), static_cast<std::int64_t>(w), 3});
  for (std::size_t px = 0; px < w * h; ++px) {
    for (std::size_t c = 0; c < 3; ++c) t[px * 3 + c] = buf[px * stride + c];
  }
  return t;
}

void save_png(const std::filesystem::path& path, const Tensor& t) {
  const Shape& s = t.shape();
  if (s.rank() != 3 || s[2] != 3) throw InvalidInput("PNG output needs shape [H,W,3], got " + s.str());
  PngImage p;
  p.img.width = static_cast<png_uint_32>(s[1]);
  p.img.height = static_cast<png_uint_32>(s[0]);
  p.img.format = PNG_FORMAT_RGB;
  std::vector<png_byte> buf(t.size());
  for (std::size_t i = 0; i < buf.size(); ++i) {
    buf[i] = static_cast<png_byte>(std::lround(std::clamp(t[i], 0.0, 255.0)));
  }
  if (!png_image_write_to_file(&p.img, path.c_str(), 0, buf.data(), 0, nullptr)) {
    throw IoError("cannot write PNG " + path.string() + ": " + p.img.message);
  }
}

Tensor load_tensor(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path.string());
  auto read = [&](void* dst, std::size_t n, const char* what) {
    in.read(static_cast<char*>(dst), static_cast<std::streamsize>(n));
    if (static_cast<std::size_t>(in.gcount()) != n) {
      throw IoError(path.string() + ": truncated tensor file (" + what + ")");
    }
  };
  char magic[4];
  read(magic, 4, "magic");
  if (std::memcmp(magic, kMagic, 4) != 0) throw IoError(path.string() + ": bad magic, not a .cten file");
  std::uint32_t version = 0;
  std::uint32_t rank = 0;
  read(&version, 4, "version");
  if (version != kVersion) throw IoError(path.string() + ": unsupported .cten version " + std::to_string(version));
  read(&rank, 4, "rank");
  if (rank == 0 || rank > 16) throw IoError(path.string() + ": invalid rank " + std::to_string(rank));
  std::vector<std::int64_t> dims(rank);
  for (auto& d : dims) {
    std::uint64_t v = 0;
    read(&v, 8, "dims");
    if (v == 0 || v > (1ULL << 40)) throw IoError(path.string() + ": invalid dimension");
    d = static_cast<std::int64_t>(v);
  }
  Shape shape(std::move(dims));
  std::vector<double> data(static_cast<std::size_t>(shape.numel()));
  read(data.data(), data.size() * 8, "payload");
  return Tensor(std::move(shape), std::move(data));
}

void save_tensor(const std::filesystem::path& path, const Tensor& t) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  out.write(kMagic, 4);
  const std::uint32_t rank = static_cast<std::uint32_t>(t.shape().rank());
  out.write(reinterpret_cast<const char*>(&kVersion), 4);
  out.write(reinterpret_cast<const char*>(&rank), 4);
  for (std::int64_t d : t.shape().dims()) {
    const auto v = static_cast<std::uint64_t>(d);
    out.write(reinterpret_cast<const char*>(&v), 8);
  }
  out.write(reinterpret_cast<const char*>(t.data().data()), static_cast<std::streamsize>(t.size() * 8));
  if (!out) throw IoError("write failed: " + path.string());
}

}  // namespace chromac::runtime
