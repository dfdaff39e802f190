// flatport is Copyright(c) 2026 the flatport authors.
// The flatport source code is licensed under the Apache License, Version 2.0.
// SPDX: Apache-2.0

#include "flatport/io.h"

#include <png.h>

#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>

#include "flatport/errors.h"
#include "flatport/render.h"

namespace flatport {

namespace {

void write_pfm_header(std::ofstream& out, const char* magic, int w, int h) {
    out << magic << "\n" << w << " " << h << "\n" << "-1.0" << "\n";
}

}  // namespace

void write_pfm(const std::string& path, const ImageBuffer& image) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InvalidSpec("pfm: cannot open '" + path + "' for writing");
    write_pfm_header(out, "PF", image.width, image.height);
    std::vector<float> row(size_t(image.width) * 3);
    for (int y = image.height - 1; y >= 0; --y) {  // bottom-up per PFM convention
        for (int x = 0; x < image.width; ++x)
            for (int c = 0; c < 3; ++c) row[size_t(x) * 3 + c] = float(image.at(x, y)[c]);
        out.write(reinterpret_cast<const char*>(row.data()), std::streamsize(row.size() * 4));
    }
    if (!out) throw InvalidSpec("pfm: write failed for '" + path + "'");
}

void write_mask_pfm(const std::string& path, const ImageBuffer& image) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InvalidSpec("pfm: cannot open '" + path + "' for writing");
    write_pfm_header(out, "Pf", image.width, image.height);
    std::vector<float> row(size_t(image.width));
    for (int y = image.height - 1; y >= 0; --y) {
        for (int x = 0; x < image.width; ++x) row[x] = image.is_valid(x, y) ? 1.0f : 0.0f;
        out.write(reinterpret_cast<const char*>(row.data()), std::streamsize(row.size() * 4));
    }
    if (!out) throw InvalidSpec("pfm: write failed for '" + path + "'");
}

ImageBuffer read_pfm(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InvalidSpec("pfm: cannot open '" + path + "'");
    std::string magic;
    int w = 0, h = 0;
    double scale = 0.0;
    in >> magic >> w >> h >> scale;
    if (magic != "PF") throw InvalidSpec("pfm: expected color 'PF' header in '" + path + "'");
    if (w <= 0 || h <= 0) throw InvalidSpec("pfm: bad dimensions in '" + path + "'");
    if (scale >= 0) throw InvalidSpec("pfm: big-endian files are not supported");
    in.get();  // single whitespace after the header
    ImageBuffer image(w, h);
    std::vector<float> row(size_t(w) * 3);
    for (int y = h - 1; y >= 0; --y) {
        in.read(reinterpret_cast<char*>(row.data()), std::streamsize(row.size() * 4));
        if (!in) throw InvalidSpec("pfm: truncated file '" + path + "'");
        for (int x = 0; x < w; ++x)
            for (int c = 0; c < 3; ++c) image.at(x, y)[c] = row[size_t(x) * 3 + c] * -scale;
    }
    return image;
}

void write_png(const std::string& path, const ImageBuffer& image) {
    FILE* fp = std::fopen(path.c_str(), "wb");
    if (!fp) throw InvalidSpec("png: cannot open '" + path + "' for writing");
    png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    png_infop info = png_create_info_struct(png);
    if (setjmp(png_jmpbuf(png))) {
        png_destroy_write_struct(&png, &info);
        std::fclose(fp);
        throw InvalidSpec("png: write failed for '" + path + "'");
    }
    png_init_io(png, fp);
    png_set_IHDR(png, info, image.width, image.height, 8, PNG_COLOR_TYPE_RGB,
                 PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
    png_write_info(png, info);
    std::vector<png_byte> row(size_t(image.width) * 3);
    for (int y = 0; y < image.height; ++y) {
        for (int x = 0; x < image.width; ++x) {
            const bool ok = image.is_valid(x, y);
            for (int c = 0; c < 3; ++c) {
                const double v = ok ? linear_to_srgb(image.at(x, y)[c]) : 0.0;
                row[size_t(x) * 3 + c] = png_byte(std::lround(v * 255.0));
            }
        }
        png_write_row(png, row.data());
    }
    png_write_end(png, nullptr);
    png_destroy_write_struct(&png, &info);
    std::fclose(fp);
}

ImageBuffer read_png(const std::string& path) {
    FILE* fp = std::fopen(path.c_str(), "rb");
    if (!fp) throw InvalidSpec("png: cannot open '" + path + "'");
    png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    png_infop info = png_create_info_struct(png);
    if (setjmp(png_jmpbuf(png))) {
        png_destroy_read_struct(&png, &info, nullptr);
        std::fclose(fp);
        throw InvalidSpec("png: read failed for '" + path + "'");
    }
    png_init_io(png, fp);
    png_read_info(png, info);
    png_set_expand(png);
    png_set_strip_16(png);
    png_set_strip_alpha(png);
    png_set_gray_to_rgb(png);
    png_read_update_info(png, info);
    const int w = int(png_get_image_width(png, info));
    const int h = int(png_get_image_height(png, info));
    ImageBuffer image(w, h);
    std::vector<png_byte> row(size_t(w) * 3);
    for (int y = 0; y < h; ++y) {
        png_read_row(png, row.data(), nullptr);
        for (int x = 0; x < w; ++x)
            for (int c = 0; c < 3; ++c)
                image.at(x, y)[c] = srgb_to_linear(row[size_t(x) * 3 + c] / 255.0);
    }
    png_destroy_read_struct(&png, &info, nullptr);
    std::fclose(fp);
    return image;
}

ImageBuffer read_image(const std::string& path) {
    if (path.size() >= 4 && path.substr(path.size() - 4) == ".pfm") return read_pfm(path);
    if (path.size() >= 4 && path.substr(path.size() - 4) == ".png") return read_png(path);
    throw InvalidSpec("image: unsupported extension for '" + path + "'");
}

namespace {

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

void write_trace_csv(const std::string& path, const std::vector<TraceRow>& rows) {
    std::ofstream out(path);
    if (!out) throw InvalidSpec("csv: cannot open '" + path + "' for writing");
    out << "iteration,lr,recon,cast,total,A_r,A_g,A_b,beta_r,beta_g,beta_b\n";
    for (const TraceRow& r : rows) {
        out << r.iteration << ',' << fmt(r.lr) << ',' << fmt(r.recon) << ',' << fmt(r.cast) << ','
            << fmt(r.total);
        for (int c = 0; c < 3; ++c) out << ',' << fmt(r.background[c]);
        for (int c = 0; c < 3; ++c) out << ',' << fmt(r.beta[c]);
        out << '\n';
    }
}

void write_params_file(const std::string& path, const MediumParams& medium) {
    std::ofstream out(path);
    if (!out) throw InvalidSpec("params: cannot open '" + path + "' for writing");
    const char* names[3] = {"r", "g", "b"};
    for (int c = 0; c < 3; ++c) out << "A_" << names[c] << " " << fmt(medium.background[c]) << "\n";
    for (int c = 0; c < 3; ++c) out << "beta_" << names[c] << " " << fmt(medium.beta[c]) << "\n";
}

MediumParams read_params_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidSpec("params: cannot open '" + path + "'");
    MediumParams medium;
    medium.bounds = MediumBounds::relaxed();
    std::string key;
    double value;
    while (in >> key >> value) {
        if (key == "A_r") medium.background[0] = value;
        else if (key == "A_g") medium.background[1] = value;
        else if (key == "A_b") medium.background[2] = value;
        else if (key == "beta_r") medium.beta[0] = value;
        else if (key == "beta_g") medium.beta[1] = value;
        else if (key == "beta_b") medium.beta[2] = value;
        else throw InvalidSpec("params: unknown key '" + key + "'");
    }
    return medium;
}

}  // namespace flatport
