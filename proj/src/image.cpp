#include "ibl/image.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <stdexcept>

namespace ibl {

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& what) {
    throw std::runtime_error(path + ": " + what);
}

[[noreturn]] void fail_at(const std::string& path, const std::string& what, size_t offset) {
    throw std::runtime_error(path + ": " + what + " (byte offset " + std::to_string(offset) + ")");
}

std::vector<uint8_t> read_all(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(path, "cannot open file");
    std::vector<uint8_t> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return bytes;
}

void write_all(const std::string& path, const void* data, size_t size) {
    std::ofstream out(path, std::ios::binary);
    if (!out) fail(path, "cannot open file for writing");
    out.write(static_cast<const char*>(data), static_cast<std::streamsize>(size));
    if (!out) fail(path, "write failed");
}

constexpr bool kHostLittleEndian = std::endian::native == std::endian::little;

float byteswap_float(float v) {
    uint32_t bits;
    std::memcpy(&bits, &v, 4);
    bits = ((bits & 0x000000ffu) << 24) | ((bits & 0x0000ff00u) << 8) |
           ((bits & 0x00ff0000u) >> 8) | ((bits & 0xff000000u) >> 24);
    std::memcpy(&v, &bits, 4);
    return v;
}

// Reads one whitespace-delimited ASCII token starting at `pos`; advances pos
// past the single whitespace character that terminates it.
std::string next_token(const std::vector<uint8_t>& bytes, size_t& pos, const std::string& path) {
    while (pos < bytes.size() && std::isspace(bytes[pos])) ++pos;
    size_t start = pos;
    while (pos < bytes.size() && !std::isspace(bytes[pos])) ++pos;
    if (start == pos) fail_at(path, "truncated header", pos);
    std::string tok(bytes.begin() + start, bytes.begin() + pos);
    if (pos < bytes.size()) ++pos;  // consume the terminating whitespace
    return tok;
}

}  // namespace

ImageF make_image(int width, int height, int channels, float fill) {
    ImageF img;
    img.width = width;
    img.height = height;
    img.channels = channels;
    img.data.assign(static_cast<size_t>(width) * height * channels, fill);
    return img;
}

FlowField make_flow(int width, int height, float dx, float dy) {
    FlowField flow;
    flow.width = width;
    flow.height = height;
    flow.data.resize(static_cast<size_t>(width) * height * 2);
    for (size_t i = 0; i < flow.data.size(); i += 2) {
        flow.data[i] = dx;
        flow.data[i + 1] = dy;
    }
    return flow;
}

bool same_size(const ImageF& a, const ImageF& b) {
    return a.width == b.width && a.height == b.height && a.channels == b.channels;
}

double l1_norm(const ImageF& img) {
    double sum = 0.0;
    for (float v : img.data) sum += std::fabs(static_cast<double>(v));
    return sum;
}

ImageF load_pfm(const std::string& path) {
    std::vector<uint8_t> bytes = read_all(path);
    size_t pos = 0;

    std::string magic = next_token(bytes, pos, path);
    int channels = 0;
    if (magic == "PF")
        channels = 3;
    else if (magic == "Pf")
        channels = 1;
    else
        fail_at(path, "bad PFM magic '" + magic + "'", 0);

    int width = 0, height = 0;
    double scale = 0.0;
    try {
        width = std::stoi(next_token(bytes, pos, path));
        height = std::stoi(next_token(bytes, pos, path));
        scale = std::stod(next_token(bytes, pos, path));
    } catch (const std::logic_error&) {
        fail_at(path, "malformed PFM header", pos);
    }
    if (width <= 0 || height <= 0) fail_at(path, "bad PFM dimensions", pos);
    if (scale == 0.0) fail_at(path, "PFM scale must be nonzero", pos);
    bool file_little_endian = scale < 0.0;

    size_t count = static_cast<size_t>(width) * height * channels;
    if (bytes.size() - pos < count * 4) fail_at(path, "truncated PFM payload", bytes.size());

    ImageF img = make_image(width, height, channels);
    // Rows are stored bottom-to-top in the file.
    for (int y = 0; y < height; ++y) {
        int src_row = height - 1 - y;
        size_t row_off = pos + static_cast<size_t>(src_row) * width * channels * 4;
        float* dst = &img.at(0, y, 0);
        std::memcpy(dst, bytes.data() + row_off, static_cast<size_t>(width) * channels * 4);
        if (file_little_endian != kHostLittleEndian) {
            for (int i = 0; i < width * channels; ++i) dst[i] = byteswap_float(dst[i]);
        }
        for (int i = 0; i < width * channels; ++i) {
            if (!std::isfinite(dst[i]))
                fail_at(path, "non-finite sample in PFM payload", row_off + static_cast<size_t>(i) * 4);
        }
    }
    return img;
}

void save_pfm(const ImageF& img, const std::string& path) {
    if (img.empty() || img.data.size() != img.pixel_count() * img.channels)
        fail(path, "refusing to save empty or inconsistent image");
    if (img.channels != 1 && img.channels != 3)
        fail(path, "PFM supports 1 or 3 channels");

    char header[64];
    int header_len = std::snprintf(header, sizeof(header), "%s\n%d %d\n%f\n",
                                   img.channels == 3 ? "PF" : "Pf", img.width, img.height,
                                   kHostLittleEndian ? -1.0 : 1.0);

    std::vector<uint8_t> bytes(static_cast<size_t>(header_len) + img.data.size() * 4);
    std::memcpy(bytes.data(), header, static_cast<size_t>(header_len));
    size_t pos = static_cast<size_t>(header_len);
    for (int y = img.height - 1; y >= 0; --y) {
        std::memcpy(bytes.data() + pos, &img.at(0, y, 0), static_cast<size_t>(img.width) * img.channels * 4);
        pos += static_cast<size_t>(img.width) * img.channels * 4;
    }
    write_all(path, bytes.data(), bytes.size());
}

namespace {

void decode_rgbe(const uint8_t rgbe[4], float* out) {
    if (rgbe[3] == 0) {
        out[0] = out[1] = out[2] = 0.0f;
        return;
    }
    float f = std::ldexp(1.0f, static_cast<int>(rgbe[3]) - (128 + 8));
    out[0] = rgbe[0] * f;
    out[1] = rgbe[1] * f;
    out[2] = rgbe[2] * f;
}

}  // namespace

ImageF load_radiance_hdr(const std::string& path) {
    std::vector<uint8_t> bytes = read_all(path);
    size_t pos = 0;

    auto read_line = [&](const char* what) {
        size_t start = pos;
        while (pos < bytes.size() && bytes[pos] != '\n') ++pos;
        if (pos >= bytes.size()) fail_at(path, std::string("truncated header (") + what + ")", start);
        std::string line(bytes.begin() + start, bytes.begin() + pos);
        ++pos;
        return line;
    };

    std::string first = read_line("magic");
    if (first.rfind("#?", 0) != 0) fail_at(path, "missing #? radiance magic", 0);

    // Header variables until the blank line; only the pixel format matters.
    for (;;) {
        std::string line = read_line("variables");
        if (line.empty()) break;
        if (line.rfind("FORMAT=", 0) == 0 && line != "FORMAT=32-bit_rle_rgbe")
            fail(path, "unsupported pixel format '" + line + "'");
    }

    std::string res = read_line("resolution");
    int width = 0, height = 0;
    if (std::sscanf(res.c_str(), "-Y %d +X %d", &height, &width) != 2 || width <= 0 || height <= 0)
        fail(path, "unsupported orientation '" + res + "' (expected \"-Y h +X w\")");

    ImageF img = make_image(width, height, 3);
    std::vector<uint8_t> scanline(static_cast<size_t>(width) * 4);

    for (int y = 0; y < height; ++y) {
        if (bytes.size() - pos < 4) fail_at(path, "truncated scanline", pos);
        const uint8_t* head = bytes.data() + pos;
        bool rle = head[0] == 2 && head[1] == 2 && ((head[2] << 8) | head[3]) == width && width >= 8 &&
                   width <= 0x7fff;
        if (rle) {
            pos += 4;
            for (int c = 0; c < 4; ++c) {
                int x = 0;
                while (x < width) {
                    if (pos >= bytes.size()) fail_at(path, "corrupt RLE scanline", pos);
                    int count = bytes[pos++];
                    if (count > 128) {
                        count -= 128;
                        if (pos >= bytes.size() || x + count > width)
                            fail_at(path, "corrupt RLE run", pos);
                        uint8_t value = bytes[pos++];
                        for (int i = 0; i < count; ++i) scanline[(x + i) * 4 + c] = value;
                    } else {
                        if (count == 0 || x + count > width || bytes.size() - pos < static_cast<size_t>(count))
                            fail_at(path, "corrupt RLE literal", pos);
                        for (int i = 0; i < count; ++i) scanline[(x + i) * 4 + c] = bytes[pos + i];
                        pos += static_cast<size_t>(count);
                    }
                    x += count;
                }
            }
        } else {
            if (head[0] == 1 && head[1] == 1 && head[2] == 1)
                fail_at(path, "old-style RLE scanline not supported", pos);
            if (bytes.size() - pos < static_cast<size_t>(width) * 4)
                fail_at(path, "truncated scanline", pos);
            for (int x = 0; x < width; ++x)
                std::memcpy(&scanline[x * 4], bytes.data() + pos + static_cast<size_t>(x) * 4, 4);
            pos += static_cast<size_t>(width) * 4;
        }
        for (int x = 0; x < width; ++x) decode_rgbe(&scanline[x * 4], &img.at(x, y, 0));
    }
    return img;
}

FlowField load_flow(const std::string& path) {
    std::vector<uint8_t> bytes = read_all(path);
    if (bytes.size() < 12 || std::memcmp(bytes.data(), "FLO1", 4) != 0)
        fail_at(path, "bad FLO magic", 0);
    uint32_t w, h;
    std::memcpy(&w, bytes.data() + 4, 4);
    std::memcpy(&h, bytes.data() + 8, 4);
    if (!kHostLittleEndian) {
        w = __builtin_bswap32(w);
        h = __builtin_bswap32(h);
    }
    if (w == 0 || h == 0 || w > (1u << 24) || h > (1u << 24)) fail_at(path, "bad FLO dimensions", 4);

    size_t count = static_cast<size_t>(w) * h * 2;
    if (bytes.size() - 12 < count * 4) fail_at(path, "truncated FLO payload", bytes.size());

    FlowField flow;
    flow.width = static_cast<int>(w);
    flow.height = static_cast<int>(h);
    flow.data.resize(count);
    std::memcpy(flow.data.data(), bytes.data() + 12, count * 4);
    if (!kHostLittleEndian)
        for (float& v : flow.data) v = byteswap_float(v);
    return flow;
}

void save_flow(const FlowField& flow, const std::string& path) {
    if (flow.width <= 0 || flow.height <= 0 ||
        flow.data.size() != static_cast<size_t>(flow.width) * flow.height * 2)
        fail(path, "refusing to save empty or inconsistent flow");
    std::vector<uint8_t> bytes(12 + flow.data.size() * 4);
    std::memcpy(bytes.data(), "FLO1", 4);
    uint32_t w = static_cast<uint32_t>(flow.width), h = static_cast<uint32_t>(flow.height);
    if (!kHostLittleEndian) {
        w = __builtin_bswap32(w);
        h = __builtin_bswap32(h);
    }
    std::memcpy(bytes.data() + 4, &w, 4);
    std::memcpy(bytes.data() + 8, &h, 4);
    std::memcpy(bytes.data() + 12, flow.data.data(), flow.data.size() * 4);
    if (!kHostLittleEndian)
        for (size_t i = 12; i < bytes.size(); i += 4) {
            float v;
            std::memcpy(&v, bytes.data() + i, 4);
            v = byteswap_float(v);
            std::memcpy(bytes.data() + i, &v, 4);
        }
    write_all(path, bytes.data(), bytes.size());
}

// ---------------------------------------------------------------------------
// PNG preview writer (stored deflate blocks, no external compressor).

namespace {

uint32_t crc32_update(uint32_t crc, const uint8_t* data, size_t size) {
    static uint32_t table[256];
    static bool init = false;
    if (!init) {
        for (uint32_t n = 0; n < 256; ++n) {
            uint32_t c = n;
            for (int k = 0; k < 8; ++k) c = (c & 1) ? 0xedb88320u ^ (c >> 1) : c >> 1;
            table[n] = c;
        }
        init = true;
    }
    crc ^= 0xffffffffu;
    for (size_t i = 0; i < size; ++i) crc = table[(crc ^ data[i]) & 0xff] ^ (crc >> 8);
    return crc ^ 0xffffffffu;
}

void put_u32_be(std::vector<uint8_t>& out, uint32_t v) {
    out.push_back(static_cast<uint8_t>(v >> 24));
    out.push_back(static_cast<uint8_t>(v >> 16));
    out.push_back(static_cast<uint8_t>(v >> 8));
    out.push_back(static_cast<uint8_t>(v));
}

void put_chunk(std::vector<uint8_t>& out, const char type[4], const std::vector<uint8_t>& body) {
    put_u32_be(out, static_cast<uint32_t>(body.size()));
    size_t start = out.size();
    out.insert(out.end(), type, type + 4);
    out.insert(out.end(), body.begin(), body.end());
    put_u32_be(out, crc32_update(0, out.data() + start, out.size() - start));
}

uint8_t srgb_encode(float linear) {
    float v = std::clamp(linear, 0.0f, 1.0f);
    float s = v <= 0.0031308f ? 12.92f * v : 1.055f * std::pow(v, 1.0f / 2.4f) - 0.055f;
    return static_cast<uint8_t>(std::lround(s * 255.0f));
}

}  // namespace

void save_png_preview(const ImageF& img, const std::string& path) {
    if (img.empty()) fail(path, "refusing to save empty image");

    // Filter byte 0 per row, RGB8 samples.
    std::vector<uint8_t> raw;
    raw.reserve(static_cast<size_t>(img.height) * (1 + static_cast<size_t>(img.width) * 3));
    for (int y = 0; y < img.height; ++y) {
        raw.push_back(0);
        for (int x = 0; x < img.width; ++x)
            for (int c = 0; c < 3; ++c)
                raw.push_back(srgb_encode(img.at(x, y, img.channels == 1 ? 0 : c)));
    }

    // zlib stream made of stored (uncompressed) deflate blocks.
    std::vector<uint8_t> z;
    z.push_back(0x78);
    z.push_back(0x01);
    size_t off = 0;
    while (off < raw.size()) {
        size_t n = std::min<size_t>(65535, raw.size() - off);
        bool last = off + n == raw.size();
        z.push_back(last ? 1 : 0);
        z.push_back(static_cast<uint8_t>(n & 0xff));
        z.push_back(static_cast<uint8_t>(n >> 8));
        z.push_back(static_cast<uint8_t>(~n & 0xff));
        z.push_back(static_cast<uint8_t>((~n >> 8) & 0xff));
        z.insert(z.end(), raw.begin() + off, raw.begin() + off + n);
        off += n;
    }
    uint32_t a = 1, b = 0;
    for (uint8_t byte : raw) {
        a = (a + byte) % 65521;
        b = (b + a) % 65521;
    }
    put_u32_be(z, (b << 16) | a);

    std::vector<uint8_t> out = {0x89, 'P', 'N', 'G', '\r', '\n', 0x1a, '\n'};
    std::vector<uint8_t> ihdr;
    put_u32_be(ihdr, static_cast<uint32_t>(img.width));
    put_u32_be(ihdr, static_cast<uint32_t>(img.height));
    ihdr.push_back(8);   // bit depth
    ihdr.push_back(2);   // color type: truecolor
    ihdr.push_back(0);
    ihdr.push_back(0);
    ihdr.push_back(0);
    put_chunk(out, "IHDR", ihdr);
    put_chunk(out, "IDAT", z);
    put_chunk(out, "IEND", {});
    write_all(path, out.data(), out.size());
}

}  // namespace ibl
