#pragma once

#include "tengen/board.hpp"

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace tengen {

struct Rank {
    enum class Kind : uint8_t { Unknown, Kyu, Dan, Pro };

    Kind kind = Kind::Unknown;
    int value = 0; // Kyu 1..30, Dan 1..9, Pro 1..9

    static Rank unknown() { return Rank{}; }
    static Rank dan(int d) { return Rank{Kind::Dan, d}; }
    static Rank kyu(int k) { return Rank{Kind::Kyu, k}; }
    static Rank pro(int p) { return Rank{Kind::Pro, p}; }

    // Accepts KGS-style strings: "6d", "3k", "2p", optional trailing '?'.
    // Anything unparsable maps to Unknown.
    static Rank parse(std::string_view text);

    std::string to_string() const;

    friend bool operator==(const Rank&, const Rank&) = default;
};

class MalformedSgf : public std::runtime_error {
public:
    MalformedSgf(std::string msg, size_t position)
        : std::runtime_error(msg + " (at byte " + std::to_string(position) + ")"),
          position(position) {}

    size_t position;
};

struct UnsupportedBoardSize : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct SgfGame {
    int board_size = 19;
    double komi = 0.0;
    Rank black_rank;
    Rank white_rank;
    int handicap = 0;                  // HA
    std::vector<Point> setup_black;    // AB
    std::vector<Point> setup_white;    // AW
    std::vector<Move> moves;           // main line only
    std::string result;

    Rank rank_of(Color c) const { return c == Color::Black ? black_rank : white_rank; }
};

// Parses the first game of an SGF collection, main line only. Unknown
// properties are ignored; "" and "tt" move values decode as Pass.
SgfGame parse_sgf(std::string_view text);

// All top-level game trees in the buffer.
std::vector<SgfGame> parse_sgf_collection(std::string_view text);

std::string game_to_sgf(const SgfGame& game);

// Reads a file, transparently inflating gzip (.sgf.gz) content.
std::string read_file_maybe_gzip(const std::string& path);

} // namespace tengen
