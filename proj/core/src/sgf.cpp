#include "tengen/sgf.hpp"

#include <zlib.h>

#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>

namespace tengen {

Rank Rank::parse(std::string_view text) {
    while (!text.empty() && text.back() == '?') text.remove_suffix(1);
    if (text.empty()) return unknown();
    int value = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr == text.data() + text.size()) return unknown();
    const char suffix = static_cast<char>(std::tolower(*ptr));
    switch (suffix) {
        case 'd':
            return value >= 1 && value <= 9 ? dan(value) : unknown();
        case 'k':
            return value >= 1 && value <= 30 ? kyu(value) : unknown();
        case 'p':
            return value >= 1 && value <= 9 ? pro(value) : unknown();
        default:
            return unknown();
    }
}

std::string Rank::to_string() const {
    switch (kind) {
        case Kind::Dan: return std::to_string(value) + "d";
        case Kind::Kyu: return std::to_string(value) + "k";
        case Kind::Pro: return std::to_string(value) + "p";
        case Kind::Unknown: break;
    }
    return "unknown";
}

namespace {

struct Cursor {
    std::string_view text;
    size_t pos = 0;

    bool eof() const { return pos >= text.size(); }
    char peek() const { return text[pos]; }

    void skip_ws() {
        while (!eof() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    }

    [[noreturn]] void fail(const std::string& msg) const { throw MalformedSgf(msg, pos); }
};

struct Property {
    std::string ident;
    std::vector<std::string> values;
};

std::string read_value(Cursor& c) {
    // c sits on '['
    ++c.pos;
    std::string out;
    while (true) {
        if (c.eof()) c.fail("unterminated property value");
        char ch = c.text[c.pos++];
        if (ch == '\\') {
            if (c.eof()) c.fail("dangling escape");
            out.push_back(c.text[c.pos++]);
        } else if (ch == ']') {
            return out;
        } else {
            out.push_back(ch);
        }
    }
}

std::vector<Property> read_node(Cursor& c) {
    // c sits just past ';'
    std::vector<Property> props;
    while (true) {
        c.skip_ws();
        if (c.eof() || !std::isupper(static_cast<unsigned char>(c.peek()))) return props;
        Property prop;
        while (!c.eof() && std::isalpha(static_cast<unsigned char>(c.peek()))) {
            if (std::isupper(static_cast<unsigned char>(c.peek()))) prop.ident.push_back(c.peek());
            ++c.pos;
        }
        c.skip_ws();
        if (c.eof() || c.peek() != '[') c.fail("property '" + prop.ident + "' has no value");
        while (!c.eof() && c.peek() == '[') {
            prop.values.push_back(read_value(c));
            c.skip_ws();
        }
        props.push_back(std::move(prop));
    }
}

// Skips a complete game tree, balancing parentheses while honoring value
// escapes, so variations after the main line can be dropped cheaply.
void skip_tree(Cursor& c) {
    int depth = 0;
    while (!c.eof()) {
        char ch = c.text[c.pos++];
        if (ch == '[') {
            while (true) {
                if (c.eof()) c.fail("unterminated property value");
                char v = c.text[c.pos++];
                if (v == '\\') {
                    if (c.eof()) c.fail("dangling escape");
                    ++c.pos;
                } else if (v == ']') {
                    break;
                }
            }
        } else if (ch == '(') {
            ++depth;
        } else if (ch == ')') {
            if (depth == 0) c.fail("unbalanced parentheses");
            if (--depth == 0) return;
        }
    }
    c.fail("unterminated game tree");
}

// Main-line node sequence of one game tree; cursor sits on '('.
std::vector<std::vector<Property>> read_main_line(Cursor& c) {
    std::vector<std::vector<Property>> nodes;
    if (c.peek() != '(') c.fail("expected '('");
    ++c.pos;
    int open = 1;
    bool took_branch_at_level = false;
    while (true) {
        c.skip_ws();
        if (c.eof()) c.fail("unterminated game tree");
        char ch = c.peek();
        if (ch == ';') {
            ++c.pos;
            nodes.push_back(read_node(c));
        } else if (ch == '(') {
            if (took_branch_at_level) {
                // Sibling variation: not on the main line.
                skip_tree(c);
            } else {
                ++c.pos;
                ++open;
                took_branch_at_level = false;
            }
        } else if (ch == ')') {
            ++c.pos;
            if (--open == 0) return nodes;
            took_branch_at_level = true;
        } else {
            c.fail(std::string("unexpected character '") + ch + "'");
        }
    }
}

std::optional<Point> decode_point(const std::string& value, int size, const Cursor& c) {
    if (value.empty()) return std::nullopt; // pass
    if (value.size() != 2) c.fail("bad coordinate '" + value + "'");
    const int col = value[0] - 'a';
    const int row = value[1] - 'a';
    if (value == "tt" && size <= 19) return std::nullopt; // pass, FF[3] convention
    if (col < 0 || row < 0 || col >= size || row >= size) {
        c.fail("coordinate '" + value + "' off board");
    }
    return Point{static_cast<uint8_t>(col), static_cast<uint8_t>(row)};
}

SgfGame game_from_nodes(const std::vector<std::vector<Property>>& nodes, const Cursor& c) {
    SgfGame game;
    bool size_seen = false;
    for (const auto& node : nodes) {
        for (const auto& prop : node) {
            const std::string& id = prop.ident;
            if (prop.values.empty()) continue;
            const std::string& v0 = prop.values.front();
            if (id == "SZ") {
                int sz = 0;
                auto [p, ec] = std::from_chars(v0.data(), v0.data() + v0.size(), sz);
                (void)p;
                if (ec != std::errc{}) c.fail("bad SZ value");
                if (sz < 2 || sz > Position::kMaxSize) {
                    throw UnsupportedBoardSize("unsupported board size " + v0);
                }
                game.board_size = sz;
                size_seen = true;
            } else if (id == "KM") {
                try {
                    game.komi = std::stod(v0);
                } catch (...) {
                    // tolerated: some servers write odd komi strings
                }
            } else if (id == "HA") {
                try {
                    game.handicap = std::stoi(v0);
                } catch (...) {
                }
            } else if (id == "BR") {
                game.black_rank = Rank::parse(v0);
            } else if (id == "WR") {
                game.white_rank = Rank::parse(v0);
            } else if (id == "RE") {
                game.result = v0;
            } else if (id == "AB" || id == "AW") {
                for (const auto& v : prop.values) {
                    if (auto pt = decode_point(v, game.board_size, c)) {
                        (id == "AB" ? game.setup_black : game.setup_white).push_back(*pt);
                    }
                }
            } else if (id == "B" || id == "W") {
                const Color color = id == "B" ? Color::Black : Color::White;
                if (auto pt = decode_point(v0, game.board_size, c)) {
                    game.moves.push_back(Move::play(color, *pt));
                } else {
                    game.moves.push_back(Move::pass(color));
                }
            }
        }
    }
    (void)size_seen;
    return game;
}

} // namespace

SgfGame parse_sgf(std::string_view text) {
    auto games = parse_sgf_collection(text);
    if (games.empty()) throw MalformedSgf("no game tree found", 0);
    return std::move(games.front());
}

std::vector<SgfGame> parse_sgf_collection(std::string_view text) {
    Cursor c{text};
    std::vector<SgfGame> games;
    while (true) {
        c.skip_ws();
        if (c.eof()) break;
        if (c.peek() != '(') c.fail("expected '(' at top level");
        auto nodes = read_main_line(c);
        games.push_back(game_from_nodes(nodes, c));
    }
    return games;
}

std::string game_to_sgf(const SgfGame& game) {
    static const char coord[] = "abcdefghijklmnopqrs";
    std::ostringstream os;
    os << "(;GM[1]FF[4]SZ[" << game.board_size << "]KM[" << game.komi << "]";
    if (game.black_rank.kind != Rank::Kind::Unknown) os << "BR[" << game.black_rank.to_string() << "]";
    if (game.white_rank.kind != Rank::Kind::Unknown) os << "WR[" << game.white_rank.to_string() << "]";
    if (game.handicap > 0) os << "HA[" << game.handicap << "]";
    auto emit_setup = [&](const char* id, const std::vector<Point>& pts) {
        if (pts.empty()) return;
        os << id;
        for (Point p : pts) os << '[' << coord[p.col] << coord[p.row] << ']';
    };
    emit_setup("AB", game.setup_black);
    emit_setup("AW", game.setup_white);
    if (!game.result.empty()) os << "RE[" << game.result << "]";
    for (const Move& m : game.moves) {
        os << ';' << (m.color == Color::Black ? 'B' : 'W') << '[';
        if (!m.is_pass()) os << coord[m.point.col] << coord[m.point.row];
        os << ']';
    }
    os << ")\n";
    return os.str();
}

std::string read_file_maybe_gzip(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::string raw((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    if (raw.size() < 2 || static_cast<unsigned char>(raw[0]) != 0x1f ||
        static_cast<unsigned char>(raw[1]) != 0x8b) {
        return raw;
    }

    z_stream zs{};
    if (inflateInit2(&zs, 16 + MAX_WBITS) != Z_OK) {
        throw std::runtime_error("zlib init failed");
    }
    std::string out;
    zs.next_in = reinterpret_cast<Bytef*>(raw.data());
    zs.avail_in = static_cast<uInt>(raw.size());
    char buf[1 << 15];
    int rc = Z_OK;
    do {
        zs.next_out = reinterpret_cast<Bytef*>(buf);
        zs.avail_out = sizeof(buf);
        rc = inflate(&zs, Z_NO_FLUSH);
        if (rc != Z_OK && rc != Z_STREAM_END) {
            inflateEnd(&zs);
            throw std::runtime_error("corrupt gzip stream: " + path);
        }
        out.append(buf, sizeof(buf) - zs.avail_out);
    } while (rc != Z_STREAM_END && zs.avail_in > 0);
    inflateEnd(&zs);
    return out;
}

} // namespace tengen
