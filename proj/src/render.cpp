#include "disco/render.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstring>
#include <fstream>
#include <map>
#include <stdexcept>

#include "disco/geometry.hpp"

namespace disco {

namespace {

struct Color {
  std::uint8_t r, g, b;
};

constexpr Color kWallColor{255, 255, 255};
constexpr Color kFloorColor{150, 102, 54};  // brown
constexpr Color kInkColor{20, 20, 20};
constexpr Color kGridColor{130, 88, 46};

// Object fills, chosen to stay readable on the brown floor.
constexpr std::array<Color, 12> kPalette = {{
    {214, 96, 77},   {67, 147, 195},  {90, 174, 97},   {230, 171, 2},
    {153, 112, 171}, {223, 194, 125}, {102, 194, 165}, {217, 95, 2},
    {166, 118, 29},  {231, 138, 195}, {141, 160, 203}, {229, 196, 148},
}};

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

// 5x7 uppercase bitmap font; each glyph is 7 rows of 5 bits, MSB leftmost.
const std::map<char, std::array<std::uint8_t, 7>>& font5x7() {
  static const std::map<char, std::array<std::uint8_t, 7>> f = {
      {'A', {0x0E, 0x11, 0x11, 0x1F, 0x11, 0x11, 0x11}},
      {'B', {0x1E, 0x11, 0x11, 0x1E, 0x11, 0x11, 0x1E}},
      {'C', {0x0E, 0x11, 0x10, 0x10, 0x10, 0x11, 0x0E}},
      {'D', {0x1E, 0x11, 0x11, 0x11, 0x11, 0x11, 0x1E}},
      {'E', {0x1F, 0x10, 0x10, 0x1E, 0x10, 0x10, 0x1F}},
      {'F', {0x1F, 0x10, 0x10, 0x1E, 0x10, 0x10, 0x10}},
      {'G', {0x0E, 0x11, 0x10, 0x17, 0x11, 0x11, 0x0F}},
      {'H', {0x11, 0x11, 0x11, 0x1F, 0x11, 0x11, 0x11}},
      {'I', {0x0E, 0x04, 0x04, 0x04, 0x04, 0x04, 0x0E}},
      {'J', {0x07, 0x02, 0x02, 0x02, 0x02, 0x12, 0x0C}},
      {'K', {0x11, 0x12, 0x14, 0x18, 0x14, 0x12, 0x11}},
      {'L', {0x10, 0x10, 0x10, 0x10, 0x10, 0x10, 0x1F}},
      {'M', {0x11, 0x1B, 0x15, 0x15, 0x11, 0x11, 0x11}},
      {'N', {0x11, 0x19, 0x15, 0x13, 0x11, 0x11, 0x11}},
      {'O', {0x0E, 0x11, 0x11, 0x11, 0x11, 0x11, 0x0E}},
      {'P', {0x1E, 0x11, 0x11, 0x1E, 0x10, 0x10, 0x10}},
      {'Q', {0x0E, 0x11, 0x11, 0x11, 0x15, 0x12, 0x0D}},
      {'R', {0x1E, 0x11, 0x11, 0x1E, 0x14, 0x12, 0x11}},
      {'S', {0x0F, 0x10, 0x10, 0x0E, 0x01, 0x01, 0x1E}},
      {'T', {0x1F, 0x04, 0x04, 0x04, 0x04, 0x04, 0x04}},
      {'U', {0x11, 0x11, 0x11, 0x11, 0x11, 0x11, 0x0E}},
      {'V', {0x11, 0x11, 0x11, 0x11, 0x11, 0x0A, 0x04}},
      {'W', {0x11, 0x11, 0x11, 0x15, 0x15, 0x1B, 0x11}},
      {'X', {0x11, 0x11, 0x0A, 0x04, 0x0A, 0x11, 0x11}},
      {'Y', {0x11, 0x11, 0x0A, 0x04, 0x04, 0x04, 0x04}},
      {'Z', {0x1F, 0x01, 0x02, 0x04, 0x08, 0x10, 0x1F}},
      {'0', {0x0E, 0x11, 0x13, 0x15, 0x19, 0x11, 0x0E}},
      {'1', {0x04, 0x0C, 0x04, 0x04, 0x04, 0x04, 0x0E}},
      {'2', {0x0E, 0x11, 0x01, 0x02, 0x04, 0x08, 0x1F}},
      {'3', {0x1F, 0x02, 0x04, 0x02, 0x01, 0x11, 0x0E}},
      {'4', {0x02, 0x06, 0x0A, 0x12, 0x1F, 0x02, 0x02}},
      {'5', {0x1F, 0x10, 0x1E, 0x01, 0x01, 0x11, 0x0E}},
      {'6', {0x06, 0x08, 0x10, 0x1E, 0x11, 0x11, 0x0E}},
      {'7', {0x1F, 0x01, 0x02, 0x04, 0x08, 0x08, 0x08}},
      {'8', {0x0E, 0x11, 0x11, 0x0E, 0x11, 0x11, 0x0E}},
      {'9', {0x0E, 0x11, 0x11, 0x0F, 0x01, 0x02, 0x0C}},
      {'-', {0x00, 0x00, 0x00, 0x1F, 0x00, 0x00, 0x00}},
      {' ', {0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00}},
  };
  return f;
}

class Canvas {
 public:
  Canvas(int w, int h, Color fill) : img_{w, h, {}} {
    img_.rgb.assign(static_cast<std::size_t>(w) * h * 3, 0);
    fill_rect(0, 0, w, h, fill);
  }

  void set(int x, int y, Color c) {
    if (x < 0 || y < 0 || x >= img_.width || y >= img_.height) return;
    std::size_t i = (static_cast<std::size_t>(y) * img_.width + x) * 3;
    img_.rgb[i] = c.r;
    img_.rgb[i + 1] = c.g;
    img_.rgb[i + 2] = c.b;
  }

  void fill_rect(int x0, int y0, int x1, int y1, Color c) {
    for (int y = std::max(0, y0); y < std::min(img_.height, y1); ++y)
      for (int x = std::max(0, x0); x < std::min(img_.width, x1); ++x)
        set(x, y, c);
  }

  void draw_text(int cx, int cy, const std::string& text, int scale, Color c) {
    const auto& font = font5x7();
    int total_w = static_cast<int>(text.size()) * 6 * scale - scale;
    int x0 = cx - total_w / 2;
    int y0 = cy - (7 * scale) / 2;
    for (std::size_t i = 0; i < text.size(); ++i) {
      char ch = static_cast<char>(std::toupper(static_cast<unsigned char>(text[i])));
      auto it = font.find(ch);
      if (it == font.end()) it = font.find(' ');
      for (int row = 0; row < 7; ++row)
        for (int col = 0; col < 5; ++col)
          if (it->second[row] & (1 << (4 - col)))
            fill_rect(x0 + static_cast<int>(i) * 6 * scale + col * scale,
                      y0 + row * scale,
                      x0 + static_cast<int>(i) * 6 * scale + (col + 1) * scale,
                      y0 + (row + 1) * scale, c);
    }
  }

  Image take() { return std::move(img_); }

 private:
  Image img_;
};

void append_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
  out.push_back(static_cast<std::uint8_t>(v >> 24));
  out.push_back(static_cast<std::uint8_t>(v >> 16));
  out.push_back(static_cast<std::uint8_t>(v >> 8));
  out.push_back(static_cast<std::uint8_t>(v));
}

std::uint32_t crc32(const std::uint8_t* data, std::size_t len) {
  static std::array<std::uint32_t, 256> table = [] {
    std::array<std::uint32_t, 256> t{};
    for (std::uint32_t n = 0; n < 256; ++n) {
      std::uint32_t c = n;
      for (int k = 0; k < 8; ++k)
        c = (c & 1) ? 0xEDB88320u ^ (c >> 1) : c >> 1;
      t[n] = c;
    }
    return t;
  }();
  std::uint32_t c = 0xFFFFFFFFu;
  for (std::size_t i = 0; i < len; ++i)
    c = table[(c ^ data[i]) & 0xFF] ^ (c >> 8);
  return c ^ 0xFFFFFFFFu;
}

std::uint32_t adler32(const std::uint8_t* data, std::size_t len) {
  std::uint32_t a = 1, b = 0;
  for (std::size_t i = 0; i < len; ++i) {
    a = (a + data[i]) % 65521;
    b = (b + a) % 65521;
  }
  return (b << 16) | a;
}

void append_chunk(std::vector<std::uint8_t>& out, const char type[4],
                  const std::vector<std::uint8_t>& data) {
  append_u32(out, static_cast<std::uint32_t>(data.size()));
  std::vector<std::uint8_t> body(type, type + 4);
  body.insert(body.end(), data.begin(), data.end());
  out.insert(out.end(), body.begin(), body.end());
  append_u32(out, crc32(body.data(), body.size()));
}

}  // namespace

Image render_topdown(const Layout& layout, const RenderOptions& options) {
  if (options.long_side < 256)
    throw std::invalid_argument("render long side must be >= 256");
  const Room& room = layout.room();
  if (room.width <= 0 || room.depth <= 0)
    throw std::invalid_argument("layout has no room");

  int wall_px = std::max(4, options.long_side / 64);
  double scale = (options.long_side - 2.0 * wall_px) / std::max(room.width, room.depth);
  int w = static_cast<int>(std::lround(room.width * scale)) + 2 * wall_px;
  int h = static_cast<int>(std::lround(room.depth * scale)) + 2 * wall_px;

  Canvas canvas(w, h, kWallColor);

  // Room coordinates to pixels; image y grows downward, room +Y is up.
  auto px = [&](double x) { return wall_px + static_cast<int>(std::lround(x * scale)); };
  auto py = [&](double y) {
    return h - wall_px - static_cast<int>(std::lround(y * scale));
  };
  auto fill_room_rect = [&](const Rect& r, Color c) {
    canvas.fill_rect(px(r.min_x), py(r.max_y), px(r.max_x), py(r.min_y), c);
  };

  fill_room_rect({0, 0, room.width, room.depth}, kFloorColor);

  if (options.show_grid) {
    for (double x = options.grid_spacing; x < room.width; x += options.grid_spacing)
      canvas.fill_rect(px(x), py(room.depth), px(x) + 1, py(0), kGridColor);
    for (double y = options.grid_spacing; y < room.depth; y += options.grid_spacing)
      canvas.fill_rect(px(0), py(y), px(room.width), py(y) + 1, kGridColor);
  }

  int label_scale = std::max(1, options.long_side / 512);
  for (const auto& [name, obj] : layout.items()) {
    Rect fp = footprint(obj.asset, obj.pose);
    Color fill = kPalette[fnv1a(name) % kPalette.size()];
    Color edge{static_cast<std::uint8_t>(fill.r / 2),
               static_cast<std::uint8_t>(fill.g / 2),
               static_cast<std::uint8_t>(fill.b / 2)};
    fill_room_rect(fp, edge);
    double inset = std::min({2.0 / scale, fp.width() / 4, fp.height() / 4});
    fill_room_rect({fp.min_x + inset, fp.min_y + inset, fp.max_x - inset,
                    fp.max_y - inset},
                   fill);

    // Facing tick: a short bar from the center toward the front face.
    Vec2 f = facing_vector(obj.pose.theta);
    double reach =
        (obj.pose.theta % 180 == 0 ? fp.height() : fp.width()) / 2 * 0.9;
    double half_w = std::max(1.0 / scale, std::min(fp.width(), fp.height()) / 16);
    Rect tick;
    if (f.x == 0) {
      tick = {obj.pose.x - half_w, std::min(obj.pose.y, obj.pose.y + f.y * reach),
              obj.pose.x + half_w, std::max(obj.pose.y, obj.pose.y + f.y * reach)};
    } else {
      tick = {std::min(obj.pose.x, obj.pose.x + f.x * reach), obj.pose.y - half_w,
              std::max(obj.pose.x, obj.pose.x + f.x * reach), obj.pose.y + half_w};
    }
    fill_room_rect(tick, kInkColor);

    if (options.show_labels) {
      canvas.draw_text(px(obj.pose.x),
                       (py(fp.min_y) + py(obj.pose.y)) / 2, name,
                       label_scale, kInkColor);
    }
  }
  return canvas.take();
}

std::vector<std::uint8_t> encode_png(const Image& image) {
  if (image.width <= 0 || image.height <= 0 ||
      image.rgb.size() != static_cast<std::size_t>(image.width) * image.height * 3)
    throw std::invalid_argument("invalid image buffer");

  // Raw stream: each scanline prefixed with filter byte 0.
  std::vector<std::uint8_t> raw;
  raw.reserve(image.rgb.size() + image.height);
  std::size_t stride = static_cast<std::size_t>(image.width) * 3;
  for (int y = 0; y < image.height; ++y) {
    raw.push_back(0);
    raw.insert(raw.end(), image.rgb.begin() + y * stride,
               image.rgb.begin() + (y + 1) * stride);
  }

  // zlib stream with stored deflate blocks: deterministic on every platform.
  std::vector<std::uint8_t> z;
  z.push_back(0x78);
  z.push_back(0x01);
  std::size_t pos = 0;
  while (pos < raw.size()) {
    std::size_t n = std::min<std::size_t>(65535, raw.size() - pos);
    bool last = pos + n == raw.size();
    z.push_back(last ? 1 : 0);
    z.push_back(static_cast<std::uint8_t>(n & 0xFF));
    z.push_back(static_cast<std::uint8_t>(n >> 8));
    z.push_back(static_cast<std::uint8_t>(~n & 0xFF));
    z.push_back(static_cast<std::uint8_t>((~n >> 8) & 0xFF));
    z.insert(z.end(), raw.begin() + pos, raw.begin() + pos + n);
    pos += n;
  }
  append_u32(z, adler32(raw.data(), raw.size()));

  std::vector<std::uint8_t> out = {137, 80, 78, 71, 13, 10, 26, 10};
  std::vector<std::uint8_t> ihdr;
  append_u32(ihdr, static_cast<std::uint32_t>(image.width));
  append_u32(ihdr, static_cast<std::uint32_t>(image.height));
  ihdr.push_back(8);  // bit depth
  ihdr.push_back(2);  // truecolor
  ihdr.push_back(0);
  ihdr.push_back(0);
  ihdr.push_back(0);
  append_chunk(out, "IHDR", ihdr);
  append_chunk(out, "IDAT", z);
  append_chunk(out, "IEND", {});
  return out;
}

void write_png(const Image& image, const std::string& path) {
  auto bytes = encode_png(image);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write image: " + path);
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
  if (!out) throw std::runtime_error("write failed: " + path);
}

Image decode_png(const std::vector<std::uint8_t>& bytes) {
  auto u32 = [&](std::size_t off) {
    return (static_cast<std::uint32_t>(bytes.at(off)) << 24) |
           (static_cast<std::uint32_t>(bytes.at(off + 1)) << 16) |
           (static_cast<std::uint32_t>(bytes.at(off + 2)) << 8) |
           static_cast<std::uint32_t>(bytes.at(off + 3));
  };
  if (bytes.size() < 8 || bytes[0] != 137 || bytes[1] != 'P')
    throw std::runtime_error("not a PNG");
  Image img;
  std::vector<std::uint8_t> z;
  std::size_t off = 8;
  while (off + 8 <= bytes.size()) {
    std::uint32_t len = u32(off);
    std::string type(bytes.begin() + off + 4, bytes.begin() + off + 8);
    std::size_t data = off + 8;
    if (type == "IHDR") {
      img.width = static_cast<int>(u32(data));
      img.height = static_cast<int>(u32(data + 4));
      if (bytes.at(data + 8) != 8 || bytes.at(data + 9) != 2)
        throw std::runtime_error("unsupported PNG format");
    } else if (type == "IDAT") {
      z.insert(z.end(), bytes.begin() + data, bytes.begin() + data + len);
    }
    off = data + len + 4;
  }
  // Stored-block zlib stream only.
  std::vector<std::uint8_t> raw;
  std::size_t p = 2;
  for (;;) {
    std::uint8_t hdr = z.at(p);
    if ((hdr & 0x06) != 0) throw std::runtime_error("unsupported deflate block");
    std::size_t n = z.at(p + 1) | (static_cast<std::size_t>(z.at(p + 2)) << 8);
    raw.insert(raw.end(), z.begin() + p + 5, z.begin() + p + 5 + n);
    p += 5 + n;
    if (hdr & 1) break;
  }
  std::size_t stride = static_cast<std::size_t>(img.width) * 3;
  img.rgb.reserve(stride * img.height);
  for (int y = 0; y < img.height; ++y) {
    if (raw.at(y * (stride + 1)) != 0)
      throw std::runtime_error("unsupported PNG filter");
    img.rgb.insert(img.rgb.end(), raw.begin() + y * (stride + 1) + 1,
                   raw.begin() + (y + 1) * (stride + 1));
  }
  return img;
}

std::string encode_base64(const std::vector<std::uint8_t>& bytes) {
  static const char* chars =
      "ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789+/";
  std::string out;
  out.reserve((bytes.size() + 2) / 3 * 4);
  std::size_t i = 0;
  for (; i + 3 <= bytes.size(); i += 3) {
    std::uint32_t v = (bytes[i] << 16) | (bytes[i + 1] << 8) | bytes[i + 2];
    out.push_back(chars[(v >> 18) & 63]);
    out.push_back(chars[(v >> 12) & 63]);
    out.push_back(chars[(v >> 6) & 63]);
    out.push_back(chars[v & 63]);
  }
  if (i + 1 == bytes.size()) {
    std::uint32_t v = bytes[i] << 16;
    out.push_back(chars[(v >> 18) & 63]);
    out.push_back(chars[(v >> 12) & 63]);
    out += "==";
  } else if (i + 2 == bytes.size()) {
    std::uint32_t v = (bytes[i] << 16) | (bytes[i + 1] << 8);
    out.push_back(chars[(v >> 18) & 63]);
    out.push_back(chars[(v >> 12) & 63]);
    out.push_back(chars[(v >> 6) & 63]);
    out += "=";
  }
  return out;
}

std::vector<std::uint8_t> decode_base64(const std::string& text) {
  auto val = [](char c) -> int {
    if (c >= 'A' && c <= 'Z') return c - 'A';
    if (c >= 'a' && c <= 'z') return c - 'a' + 26;
    if (c >= '0' && c <= '9') return c - '0' + 52;
    if (c == '+') return 62;
    if (c == '/') return 63;
    return -1;
  };
  std::vector<std::uint8_t> out;
  int acc = 0, bits = 0;
  for (char c : text) {
    if (c == '=' || c == '\n' || c == '\r') continue;
    int v = val(c);
    if (v < 0) throw std::runtime_error("invalid base64");
    acc = (acc << 6) | v;
    bits += 6;
    if (bits >= 8) {
      bits -= 8;
      out.push_back(static_cast<std::uint8_t>((acc >> bits) & 0xFF));
    }
  }
  return out;
}

}  // namespace disco
