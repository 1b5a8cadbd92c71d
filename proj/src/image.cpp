/*******************************************************************************
 * Copyright 2026 The juliashape authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 *******************************************************************************/
#include "juliashape/image.hpp"

#include <cstdio>
#include <memory>
#include <vector>

#include "juliashape/errors.hpp"

namespace juliashape {

namespace {

struct FileCloser {
    void operator()(std::FILE* f) const {
        if (f) std::fclose(f);
    }
};
using FilePtr = std::unique_ptr<std::FILE, FileCloser>;

FilePtr open_binary(const std::string& path) {
    FilePtr f(std::fopen(path.c_str(), "wb"));
    if (!f) throw io_error("cannot open " + path + " for writing");
    return f;
}

void write_all(std::FILE* f, const std::vector<unsigned char>& buf, const std::string& path) {
    if (std::fwrite(buf.data(), 1, buf.size(), f) != buf.size())
        throw io_error("short write to " + path);
}

} // namespace

void write_pgm_labels(const Classification& c, const std::string& path) {
    FilePtr f = open_binary(path);
    std::fprintf(f.get(), "P5\n%d %d\n255\n", c.grid.width, c.grid.height);
    std::vector<unsigned char> row(c.grid.width);
    for (int r = 0; r < c.grid.height; ++r) {
        for (int q = 0; q < c.grid.width; ++q)
            row[q] = (c.at(r, q) == Label::inside) ? 0 : 255;
        write_all(f.get(), row, path);
    }
}

void write_pgm_mask(const PixelMask& m, const std::string& path) {
    FilePtr f = open_binary(path);
    std::fprintf(f.get(), "P5\n%d %d\n255\n", m.width, m.height);
    std::vector<unsigned char> row(m.width);
    for (int r = 0; r < m.height; ++r) {
        for (int q = 0; q < m.width; ++q) row[q] = m.at(r, q) ? 0 : 255;
        write_all(f.get(), row, path);
    }
}

void write_ppm_iterations(const Classification& c, int max_iter, const std::string& path) {
    FilePtr f = open_binary(path);
    std::fprintf(f.get(), "P6\n%d %d\n255\n", c.grid.width, c.grid.height);
    std::vector<unsigned char> row(static_cast<size_t>(c.grid.width) * 3);
    for (int r = 0; r < c.grid.height; ++r) {
        for (int q = 0; q < c.grid.width; ++q) {
            const std::int32_t it = c.iters[static_cast<size_t>(r) * c.grid.width + q];
            unsigned char rr = 0, gg = 0, bb = 0;
            if (it > 0) { // escaped: ramp from deep blue to warm white
                const int v = static_cast<int>(255LL * it / std::max(1, max_iter));
                rr = static_cast<unsigned char>(v);
                gg = static_cast<unsigned char>((v * v) / 255);
                bb = static_cast<unsigned char>(128 + v / 2);
            }
            row[static_cast<size_t>(q) * 3] = rr;
            row[static_cast<size_t>(q) * 3 + 1] = gg;
            row[static_cast<size_t>(q) * 3 + 2] = bb;
        }
        write_all(f.get(), row, path);
    }
}

} // namespace juliashape
