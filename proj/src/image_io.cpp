#include "epls/image_io.hpp"

#include <png.h>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <memory>
#include <stdexcept>
#include <vector>

namespace epls {

namespace {

std::string lower_ext(const std::string& path)
{
    const auto dot = path.find_last_of('.');
    if (dot == std::string::npos) return {};
    std::string ext = path.substr(dot + 1);
    std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return std::tolower(c); });
    return ext;
}

struct FileCloser {
    void operator()(std::FILE* f) const { if (f) std::fclose(f); }
};
using FilePtr = std::unique_ptr<std::FILE, FileCloser>;

FilePtr open_file(const std::string& path, const char* mode)
{
    FilePtr f(std::fopen(path.c_str(), mode));
    if (!f)
        throw std::runtime_error("cannot open '" + path + "'");
    return f;
}

[[noreturn]] void fail(const std::string& path, const std::string& why)
{
    throw std::runtime_error("'" + path + "': " + why);
}

// ---------------------------------------------------------------- PNG

PlanarImage load_png(const std::string& path)
{
    FilePtr f = open_file(path, "rb");
    png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    png_infop info = png ? png_create_info_struct(png) : nullptr;
    if (!png || !info) {
        png_destroy_read_struct(&png, &info, nullptr);
        fail(path, "libpng allocation failed");
    }
    if (setjmp(png_jmpbuf(png))) {
        png_destroy_read_struct(&png, &info, nullptr);
        fail(path, "not a readable PNG");
    }
    png_init_io(png, f.get());
    png_read_info(png, info);

    png_set_expand(png);
    png_set_strip_16(png);
    png_set_strip_alpha(png);
    const int color = png_get_color_type(png, info);
    if (color == PNG_COLOR_TYPE_PALETTE)
        png_set_palette_to_rgb(png);
    png_read_update_info(png, info);

    const int w = static_cast<int>(png_get_image_width(png, info));
    const int h = static_cast<int>(png_get_image_height(png, info));
    int ch = static_cast<int>(png_get_channels(png, info));
    std::vector<unsigned char> rowbuf(static_cast<std::size_t>(w) * ch);

    const int out_ch = ch >= 3 ? 3 : 1;
    PlanarImage img(w, h, out_ch);
    for (int y = 0; y < h; ++y) {
        png_read_row(png, rowbuf.data(), nullptr);
        for (int x = 0; x < w; ++x)
            for (int c = 0; c < out_ch; ++c)
                img.at(c, y, x) = rowbuf[static_cast<std::size_t>(x) * ch + c] / 255.0;
    }
    png_read_end(png, nullptr);
    png_destroy_read_struct(&png, &info, nullptr);
    return img;
}

void save_png(const std::string& path, const PlanarImage& img)
{
    FilePtr f = open_file(path, "wb");
    png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    png_infop info = png ? png_create_info_struct(png) : nullptr;
    if (!png || !info) {
        png_destroy_write_struct(&png, &info);
        fail(path, "libpng allocation failed");
    }
    if (setjmp(png_jmpbuf(png))) {
        png_destroy_write_struct(&png, &info);
        fail(path, "PNG write failed");
    }
    png_init_io(png, f.get());
    const int ch = img.channels();
    png_set_IHDR(png, info, img.width(), img.height(), 8,
                 ch == 1 ? PNG_COLOR_TYPE_GRAY : PNG_COLOR_TYPE_RGB,
                 PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
    png_write_info(png, info);

    std::vector<unsigned char> row(static_cast<std::size_t>(img.width()) * ch);
    for (int y = 0; y < img.height(); ++y) {
        for (int x = 0; x < img.width(); ++x)
            for (int c = 0; c < ch; ++c) {
                const double v = std::clamp(img.at(c, y, x), 0.0, 1.0);
                row[static_cast<std::size_t>(x) * ch + c] =
                    static_cast<unsigned char>(std::lround(v * 255.0));
            }
        png_write_row(png, row.data());
    }
    png_write_end(png, nullptr);
    png_destroy_write_struct(&png, &info);
}

// ---------------------------------------------------------------- PPM/PGM

int read_pnm_int(std::FILE* f)
{
    int c = std::fgetc(f);
    while (c != EOF && (std::isspace(c) || c == '#')) {
        if (c == '#')
            while (c != EOF && c != '\n') c = std::fgetc(f);
        c = std::fgetc(f);
    }
    int value = 0;
    bool any = false;
    while (c != EOF && std::isdigit(c)) {
        value = value * 10 + (c - '0');
        any = true;
        c = std::fgetc(f);
    }
    if (!any) return -1;
    return value;
}

PlanarImage load_pnm(const std::string& path)
{
    FilePtr f = open_file(path, "rb");
    char magic[3] = {};
    if (std::fread(magic, 1, 2, f.get()) != 2 || magic[0] != 'P' || (magic[1] != '5' && magic[1] != '6'))
        fail(path, "expected binary PGM (P5) or PPM (P6)");
    const int ch = magic[1] == '6' ? 3 : 1;
    const int w = read_pnm_int(f.get());
    const int h = read_pnm_int(f.get());
    const int maxval = read_pnm_int(f.get());
    if (w <= 0 || h <= 0 || maxval <= 0 || maxval > 65535)
        fail(path, "bad PNM header");

    PlanarImage img(w, h, ch);
    const std::size_t count = static_cast<std::size_t>(w) * h * ch;
    if (maxval < 256) {
        std::vector<unsigned char> buf(count);
        if (std::fread(buf.data(), 1, count, f.get()) != count)
            fail(path, "truncated PNM data");
        std::size_t i = 0;
        for (int y = 0; y < h; ++y)
            for (int x = 0; x < w; ++x)
                for (int c = 0; c < ch; ++c)
                    img.at(c, y, x) = buf[i++] / static_cast<double>(maxval);
    } else {
        std::vector<unsigned char> buf(count * 2);
        if (std::fread(buf.data(), 1, count * 2, f.get()) != count * 2)
            fail(path, "truncated PNM data");
        std::size_t i = 0;
        for (int y = 0; y < h; ++y)
            for (int x = 0; x < w; ++x)
                for (int c = 0; c < ch; ++c) {
                    const int v = buf[i] << 8 | buf[i + 1];
                    i += 2;
                    img.at(c, y, x) = v / static_cast<double>(maxval);
                }
    }
    return img;
}

void save_pnm(const std::string& path, const PlanarImage& img)
{
    FilePtr f = open_file(path, "wb");
    const int ch = img.channels();
    std::fprintf(f.get(), "P%c\n%d %d\n255\n", ch == 3 ? '6' : '5', img.width(), img.height());
    std::vector<unsigned char> buf(static_cast<std::size_t>(img.width()) * img.height() * ch);
    std::size_t i = 0;
    for (int y = 0; y < img.height(); ++y)
        for (int x = 0; x < img.width(); ++x)
            for (int c = 0; c < ch; ++c) {
                const double v = std::clamp(img.at(c, y, x), 0.0, 1.0);
                buf[i++] = static_cast<unsigned char>(std::lround(v * 255.0));
            }
    if (std::fwrite(buf.data(), 1, buf.size(), f.get()) != buf.size())
        fail(path, "short write");
}

// ---------------------------------------------------------------- PFM

PlanarImage load_pfm(const std::string& path)
{
    FilePtr f = open_file(path, "rb");
    char magic[3] = {};
    if (std::fread(magic, 1, 2, f.get()) != 2 || magic[0] != 'P' || (magic[1] != 'F' && magic[1] != 'f'))
        fail(path, "expected PFM header");
    const int ch = magic[1] == 'F' ? 3 : 1;
    const int w = read_pnm_int(f.get());
    const int h = read_pnm_int(f.get());
    double scale = 0.0;
    if (std::fscanf(f.get(), "%lf", &scale) != 1 || scale == 0.0 || w <= 0 || h <= 0)
        fail(path, "bad PFM header");
    std::fgetc(f.get()); // single whitespace after scale
    const bool little = scale < 0.0;

    const std::size_t count = static_cast<std::size_t>(w) * h * ch;
    std::vector<float> buf(count);
    if (std::fread(buf.data(), sizeof(float), count, f.get()) != count)
        fail(path, "truncated PFM data");
    if (!little)
        for (float& v : buf) {
            auto* b = reinterpret_cast<unsigned char*>(&v);
            std::swap(b[0], b[3]);
            std::swap(b[1], b[2]);
        }

    // PFM scanlines run bottom to top.
    PlanarImage img(w, h, ch);
    std::size_t i = 0;
    for (int y = h - 1; y >= 0; --y)
        for (int x = 0; x < w; ++x)
            for (int c = 0; c < ch; ++c)
                img.at(c, y, x) = buf[i++];
    return img;
}

void save_pfm(const std::string& path, const PlanarImage& img)
{
    FilePtr f = open_file(path, "wb");
    const int ch = img.channels();
    std::fprintf(f.get(), "P%c\n%d %d\n-1.0\n", ch == 3 ? 'F' : 'f', img.width(), img.height());
    std::vector<float> buf(static_cast<std::size_t>(img.width()) * img.height() * ch);
    std::size_t i = 0;
    for (int y = img.height() - 1; y >= 0; --y)
        for (int x = 0; x < img.width(); ++x)
            for (int c = 0; c < ch; ++c)
                buf[i++] = static_cast<float>(img.at(c, y, x));
    if (std::fwrite(buf.data(), sizeof(float), buf.size(), f.get()) != buf.size())
        fail(path, "short write");
}

// ---------------------------------------------------------------- Radiance HDR

void rgbe_to_rgb(const unsigned char rgbe[4], double rgb[3])
{
    if (rgbe[3] == 0) {
        rgb[0] = rgb[1] = rgb[2] = 0.0;
        return;
    }
    const double scale = std::ldexp(1.0, rgbe[3] - (128 + 8));
    for (int c = 0; c < 3; ++c) rgb[c] = rgbe[c] * scale;
}

void rgb_to_rgbe(const double rgb[3], unsigned char rgbe[4])
{
    const double maxv = std::max({rgb[0], rgb[1], rgb[2]});
    if (maxv < 1e-32) {
        rgbe[0] = rgbe[1] = rgbe[2] = rgbe[3] = 0;
        return;
    }
    int e = 0;
    const double m = std::frexp(maxv, &e);
    const double scale = m * 256.0 / maxv;
    for (int c = 0; c < 3; ++c)
        rgbe[c] = static_cast<unsigned char>(std::max(0.0, rgb[c]) * scale);
    rgbe[3] = static_cast<unsigned char>(e + 128);
}

PlanarImage load_hdr(const std::string& path)
{
    FilePtr fp = open_file(path, "rb");
    std::FILE* f = fp.get();
    char line[256];
    if (!std::fgets(line, sizeof line, f) || std::strncmp(line, "#?", 2) != 0)
        fail(path, "missing Radiance signature");
    while (std::fgets(line, sizeof line, f)) {
        if (line[0] == '\n' || line[0] == '\r') break; // end of header
    }
    int w = 0, h = 0;
    if (!std::fgets(line, sizeof line, f) || std::sscanf(line, "-Y %d +X %d", &h, &w) != 2)
        fail(path, "unsupported Radiance resolution line");

    PlanarImage img(w, h, 3);
    std::vector<unsigned char> scan(static_cast<std::size_t>(w) * 4);
    for (int y = 0; y < h; ++y) {
        unsigned char head[4];
        if (std::fread(head, 1, 4, f) != 4)
            fail(path, "truncated HDR scanline");
        if (head[0] == 2 && head[1] == 2 && (head[2] << 8 | head[3]) == w && w >= 8) {
            // New-style RLE: four separate component streams.
            for (int c = 0; c < 4; ++c) {
                int x = 0;
                while (x < w) {
                    const int code = std::fgetc(f);
                    if (code == EOF) fail(path, "truncated HDR RLE");
                    if (code > 128) {
                        const int run = code - 128;
                        const int v = std::fgetc(f);
                        if (v == EOF || x + run > w) fail(path, "bad HDR RLE run");
                        for (int i = 0; i < run; ++i) scan[static_cast<std::size_t>(x++) * 4 + c] = static_cast<unsigned char>(v);
                    } else {
                        if (x + code > w) fail(path, "bad HDR RLE run");
                        for (int i = 0; i < code; ++i) {
                            const int v = std::fgetc(f);
                            if (v == EOF) fail(path, "truncated HDR RLE");
                            scan[static_cast<std::size_t>(x++) * 4 + c] = static_cast<unsigned char>(v);
                        }
                    }
                }
            }
        } else {
            // Flat scanline; the four bytes already read are the first pixel.
            std::memcpy(scan.data(), head, 4);
            if (w > 1 && std::fread(scan.data() + 4, 1, static_cast<std::size_t>(w - 1) * 4, f)
                             != static_cast<std::size_t>(w - 1) * 4)
                fail(path, "truncated HDR scanline");
        }
        for (int x = 0; x < w; ++x) {
            double rgb[3];
            rgbe_to_rgb(&scan[static_cast<std::size_t>(x) * 4], rgb);
            for (int c = 0; c < 3; ++c) img.at(c, y, x) = rgb[c];
        }
    }
    return img;
}

void save_hdr(const std::string& path, const PlanarImage& img)
{
    if (img.channels() != 3)
        fail(path, "Radiance HDR requires 3 channels");
    FilePtr f = open_file(path, "wb");
    std::fprintf(f.get(), "#?RADIANCE\nFORMAT=32-bit_rle_rgbe\n\n-Y %d +X %d\n", img.height(), img.width());
    std::vector<unsigned char> scan(static_cast<std::size_t>(img.width()) * 4);
    for (int y = 0; y < img.height(); ++y) {
        for (int x = 0; x < img.width(); ++x) {
            const double rgb[3] = {img.at(0, y, x), img.at(1, y, x), img.at(2, y, x)};
            rgb_to_rgbe(rgb, &scan[static_cast<std::size_t>(x) * 4]);
        }
        if (std::fwrite(scan.data(), 1, scan.size(), f.get()) != scan.size())
            fail(path, "short write");
    }
}

} // namespace

PlanarImage load_image(const std::string& path)
{
    const std::string ext = lower_ext(path);
    if (ext == "png") return load_png(path);
    if (ext == "ppm" || ext == "pgm") return load_pnm(path);
    if (ext == "pfm") return load_pfm(path);
    if (ext == "hdr") return load_hdr(path);
    throw std::runtime_error("'" + path + "': unsupported image extension ." + ext);
}

void save_image(const std::string& path, const PlanarImage& img)
{
    if (img.empty())
        throw std::runtime_error("save_image: empty image");
    const std::string ext = lower_ext(path);
    if (ext == "png") return save_png(path, img);
    if (ext == "ppm" || ext == "pgm") return save_pnm(path, img);
    if (ext == "pfm") return save_pfm(path, img);
    if (ext == "hdr") return save_hdr(path, img);
    throw std::runtime_error("'" + path + "': unsupported image extension ." + ext);
}

} // namespace epls
