#pragma once

// Decodes compiled LFMIS instances back into grid coordinates and checks the
// member set against the execution history.

#include <cstdint>
#include <sstream>
#include <string>
#include <vector>

#include "factgraph/lfmis.hpp"
#include "factgraph/tm.hpp"
#include "factgraph/tm_compile.hpp"

namespace fgtest {

struct GridDecoded {
    std::size_t row;
    std::size_t col;
    std::size_t tile;  // rank in the tile alphabet
};

inline GridDecoded decode_grid_vertex(const fg::FactoredVertex& v, std::size_t n, std::size_t k) {
    GridDecoded d{0, 0, 0};
    for (std::size_t i = 0; i < k; ++i) d.row = d.row * n + v[i];
    for (std::size_t i = 0; i < k; ++i) d.col = d.col * n + v[k + i];
    d.tile = v[2 * k] - n;
    return d;
}

// Expected tile (q-rank, a-rank) for grid position (row, col), derived from
// the trace: dotted symbols on row 0, the execution history on rows 1..t-1,
// and copies of the halting row below.
inline std::pair<std::size_t, std::size_t> expected_tile(const fg::TileAlphabet& tiles,
                                                         const fg::ExecutionTrace& trace,
                                                         const std::string& input, std::size_t row,
                                                         std::size_t col) {
    std::size_t n = input.size();
    if (row == 0) {
        if (col == 0) return {fg::TileAlphabet::kStartDot, 0};
        if (col < n) return {fg::TileAlphabet::kStar, col};
        return {fg::TileAlphabet::kStar, tiles.blank_rank()};
    }
    std::size_t trace_row = std::min(row, trace.t - 1);
    const auto& cells = trace.rows[trace_row];
    fg::TraceCell cell;
    if (col < cells.size()) cell = cells[col];
    std::size_t q = cell.state == "*" ? fg::TileAlphabet::kStar : tiles.state_rank(cell.state);
    return {q, tiles.symbol_rank(cell.symbol)};
}

// Full audit: one member per supernode, contents equal to the padded trace.
inline std::string check_lfmis_simulates(const fg::TMSpec& tm, const std::string& input,
                                         const fg::ExecutionTrace& trace, std::size_t T,
                                         std::size_t k, const fg::LfmisResult& result) {
    std::size_t n = input.size();
    fg::TileAlphabet tiles(tm, input);
    if (result.members.size() != T * T) {
        std::ostringstream os;
        os << "expected " << T * T << " members, got " << result.members.size();
        return os.str();
    }
    std::vector<char> seen(T * T, 0);
    for (const fg::FactoredVertex& v : result.members) {
        GridDecoded d = decode_grid_vertex(v, n, k);
        if (d.row >= T || d.col >= T) return "member outside the grid";
        if (seen[d.row * T + d.col]) return "two members in one supernode";
        seen[d.row * T + d.col] = 1;
        auto [eq, ea] = expected_tile(tiles, trace, input, d.row, d.col);
        if (tiles.tile(eq, ea) != d.tile) {
            std::ostringstream os;
            os << "supernode (" << d.row << "," << d.col << "): expected tile "
               << tiles.tile_display(tiles.tile(eq, ea)) << ", got "
               << tiles.tile_display(d.tile);
            return os.str();
        }
    }
    return "";
}

}  // namespace fgtest
