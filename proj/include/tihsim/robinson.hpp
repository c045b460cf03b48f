#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "tihsim/bigfixed.hpp"
#include "tihsim/common.hpp"

namespace tihsim::robinson {

using fx::BigFixed;

struct Segment {
    std::int64_t row;
    std::int64_t col;
    std::int64_t len;
};

// One size class of the interlocking-square hierarchy: squares of side 4^k on
// a 2*4^k pitch, one per pitch cell, so their density is 1/4^(2k+1).
struct Level {
    std::int64_t k = 0;
    std::int64_t size = 0;   // 4^k
    std::int64_t pitch = 0;  // 2 * 4^k
    std::int64_t rows = 0;
    std::int64_t cols = 0;

    std::int64_t count() const { return rows * cols; }

    std::vector<Segment> top_edges(std::int64_t budget = 1 << 22) const {
        require(count() <= budget, "top_edges: segment budget exceeded");
        std::vector<Segment> out;
        out.reserve(size_t(count()));
        for (std::int64_t i = 0; i < rows; ++i)
            for (std::int64_t j = 0; j < cols; ++j) out.push_back({i * pitch, j * pitch, size});
        return out;
    }
};

struct SquareHierarchy {
    std::int64_t grid = 0;
    std::vector<Level> levels;  // every k whose squares fit in the grid
};

inline SquareHierarchy hierarchy(std::int64_t grid) {
    require(grid >= 4, "hierarchy: grid side must be >= 4");
    SquareHierarchy h;
    h.grid = grid;
    for (std::int64_t k = 1;; ++k) {
        Level lv;
        lv.k = k;
        lv.size = std::int64_t(1) << (2 * k);
        if (lv.size > grid) break;
        lv.pitch = 2 * lv.size;
        lv.rows = (grid - 1) / lv.pitch + 1;
        lv.cols = (grid - lv.size) / lv.pitch + 1;
        h.levels.push_back(lv);
    }
    return h;
}

// Levels entering the lattice energy interval.
inline std::int64_t interval_depth(std::int64_t grid) {
    std::int64_t k = 0;
    while ((std::int64_t(1) << (2 * (k + 1))) <= grid / 2) ++k;
    return k;
}

struct EnergyInterval {
    BigFixed lo, hi;
};

// Floor-product bounds on the lattice ground energy given the per-size chain
// energies: sum over k of floor(L/2^(2k+1)) * (floor(L/2^(2k+1)) -/+ 1) * lambda_k.
inline EnergyInterval energy_interval(std::int64_t grid,
                                      const std::map<std::int64_t, BigFixed>& lambdas) {
    EnergyInterval out;
    out.lo = BigFixed::from_int(0);
    out.hi = BigFixed::from_int(0);
    std::int64_t depth = interval_depth(grid);
    for (std::int64_t k = 1; k <= depth; ++k) {
        auto it = lambdas.find(k);
        require(it != lambdas.end(),
                "energy_interval: missing lambda for k = " + std::to_string(k));
        cpp_int q = cpp_int(grid) >> (2 * k + 1);
        out.lo = add(out.lo, mul(BigFixed::from_int(q * (q - 1)), it->second));
        out.hi = add(out.hi, mul(BigFixed::from_int(q * (q + 1)), it->second));
    }
    return out;
}

inline std::string ascii_render(const SquareHierarchy& h, std::int64_t max_side = 64) {
    require(h.grid <= max_side, "ascii_render: grid too large");
    std::vector<std::string> canvas(size_t(h.grid), std::string(size_t(h.grid), '.'));
    for (const Level& lv : h.levels) {
        char mark = static_cast<char>('0' + lv.k % 10);
        for (const Segment& s : lv.top_edges())
            for (std::int64_t c = s.col; c < s.col + s.len; ++c)
                canvas[size_t(s.row)][size_t(c)] = mark;
    }
    std::string out;
    for (const auto& line : canvas) out += line + "\n";
    return out;
}

}  // namespace tihsim::robinson
