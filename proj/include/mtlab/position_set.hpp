#pragma once

#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "othello.hpp"
#include "synthetic.hpp"

// Position-set files: one record per line, '#' comments and blank lines
// ignored.
//
//   synthetic w=3 d=8 seed=42 p=0.9 model=edge range=100
//   othello <36 chars of .XO> <X|O>
//   othello standard

namespace mtlab {

class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& where, int line, const std::string& what)
        : std::runtime_error(where + ":" + std::to_string(line) + ": " + what), line_(line)
    {
    }
    int line() const noexcept { return line_; }

private:
    int line_;
};

/// A game plus the record it was built from.
struct PositionEntry {
    std::variant<SyntheticTree, OthelloGame> game;

    const char* domain() const { return std::holds_alternative<SyntheticTree>(game) ? "synthetic" : "othello"; }
};

namespace detail {

inline std::vector<std::string_view> split_ws(std::string_view s)
{
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < s.size()) {
        while (i < s.size() && (s[i] == ' ' || s[i] == '\t' || s[i] == '\r')) ++i;
        std::size_t j = i;
        while (j < s.size() && s[j] != ' ' && s[j] != '\t' && s[j] != '\r') ++j;
        if (j > i) out.push_back(s.substr(i, j - i));
        i = j;
    }
    return out;
}

template <class T>
T parse_number(std::string_view field, std::string_view text)
{
    T v{};
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc{} || ptr != text.data() + text.size()) {
        throw std::invalid_argument("bad value for " + std::string(field) + ": '" + std::string(text) + "'");
    }
    return v;
}

inline std::string format_double(double v)
{
    char buf[64];
    const auto r = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, r.ptr);
}

} // namespace detail

inline TreeConfig parse_tree_config(const std::vector<std::string_view>& fields)
{
    TreeConfig cfg;
    bool seen[6] = {};
    for (std::size_t i = 1; i < fields.size(); ++i) {
        const auto f = fields[i];
        const auto eq = f.find('=');
        if (eq == std::string_view::npos) throw std::invalid_argument("expected key=value, got '" + std::string(f) + "'");
        const auto k = f.substr(0, eq);
        const auto v = f.substr(eq + 1);
        if (k == "w") {
            cfg.width = detail::parse_number<int>(k, v), seen[0] = true;
        } else if (k == "d") {
            cfg.depth = detail::parse_number<int>(k, v), seen[1] = true;
        } else if (k == "seed") {
            cfg.seed = detail::parse_number<std::uint64_t>(k, v), seen[2] = true;
        } else if (k == "p") {
            cfg.ordering = detail::parse_number<double>(k, v), seen[3] = true;
        } else if (k == "model") {
            if (v == "edge") {
                cfg.model = ValueModel::EdgeDelta;
            } else if (v == "iid") {
                cfg.model = ValueModel::IidLeaf;
            } else {
                throw std::invalid_argument("model must be iid or edge, got '" + std::string(v) + "'");
            }
            seen[4] = true;
        } else if (k == "range") {
            cfg.range = detail::parse_number<int>(k, v), seen[5] = true;
        } else {
            throw std::invalid_argument("unknown synthetic field '" + std::string(k) + "'");
        }
    }
    if (!seen[0] || !seen[1]) throw std::invalid_argument("synthetic record needs at least w= and d=");
    return cfg;
}

inline std::string format_tree_config(const TreeConfig& c)
{
    return "synthetic w=" + std::to_string(c.width) + " d=" + std::to_string(c.depth) +
           " seed=" + std::to_string(c.seed) + " p=" + detail::format_double(c.ordering) +
           " model=" + to_string(c.model) + " range=" + std::to_string(c.range);
}

/// One record; throws std::invalid_argument on malformed input.
inline PositionEntry parse_position(std::string_view line)
{
    const auto fields = detail::split_ws(line);
    if (fields.empty()) throw std::invalid_argument("empty position record");
    if (fields[0] == "synthetic") return {SyntheticTree(parse_tree_config(fields))};
    if (fields[0] == "othello") {
        if (fields.size() == 2 && fields[1] == "standard") return {OthelloGame(othello_standard())};
        if (fields.size() != 3) throw std::invalid_argument("othello record: expected '<board> <X|O>' or 'standard'");
        return {OthelloGame(parse_othello(fields[1], fields[2]))};
    }
    throw std::invalid_argument("unknown record type '" + std::string(fields[0]) + "'");
}

inline std::string format_position(const PositionEntry& e)
{
    if (const auto* t = std::get_if<SyntheticTree>(&e.game)) return format_tree_config(t->config());
    return "othello " + format_othello(std::get<OthelloGame>(e.game).root());
}

inline std::vector<PositionEntry> parse_position_set(std::istream& in, const std::string& where = "<input>")
{
    std::vector<PositionEntry> out;
    std::string line;
    int number = 0;
    while (std::getline(in, line)) {
        ++number;
        const auto hash = line.find('#');
        std::string_view body(line);
        if (hash != std::string::npos) body = body.substr(0, hash);
        if (detail::split_ws(body).empty()) continue;
        try {
            out.push_back(parse_position(body));
        } catch (const std::exception& ex) {
            throw ParseError(where, number, ex.what());
        }
    }
    return out;
}

inline std::vector<PositionEntry> load_position_set(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open position set '" + path + "'");
    return parse_position_set(in, path);
}

inline void save_position_set(const std::vector<PositionEntry>& set, const std::string& path)
{
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write position set '" + path + "'");
    for (const auto& e : set) out << format_position(e) << '\n';
    if (!out) throw std::runtime_error("write failed for '" + path + "'");
}

} // namespace mtlab
