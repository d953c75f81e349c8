#pragma once

#include <algorithm>
#include <array>
#include <bit>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "core.hpp"
#include "synthetic.hpp"

namespace mtlab {

namespace othello {

inline constexpr int kSide = 6;
inline constexpr int kSquares = kSide * kSide;
inline constexpr std::uint64_t kFull = (std::uint64_t{1} << kSquares) - 1;

constexpr std::uint64_t column_mask(int c)
{
    std::uint64_t m = 0;
    for (int r = 0; r < kSide; ++r) m |= std::uint64_t{1} << (r * kSide + c);
    return m;
}

inline constexpr std::uint64_t kNotFirstCol = kFull & ~column_mask(0);
inline constexpr std::uint64_t kNotLastCol = kFull & ~column_mask(kSide - 1);

// Shift every disc one step in direction dir (0..7), dropping discs that
// leave the board.
constexpr std::uint64_t shift(std::uint64_t b, int dir)
{
    switch (dir) {
    case 0: return (b << 1) & kNotFirstCol;          // east
    case 1: return (b >> 1) & kNotLastCol;           // west
    case 2: return (b << kSide) & kFull;             // south
    case 3: return b >> kSide;                       // north
    case 4: return (b << (kSide + 1)) & kNotFirstCol; // south-east
    case 5: return (b << (kSide - 1)) & kNotLastCol;  // south-west
    case 6: return (b >> (kSide - 1)) & kNotFirstCol; // north-east
    case 7: return (b >> (kSide + 1)) & kNotLastCol;  // north-west
    }
    return 0;
}

constexpr std::uint64_t legal_moves(std::uint64_t own, std::uint64_t opp)
{
    const std::uint64_t empty = kFull & ~(own | opp);
    std::uint64_t moves = 0;
    for (int dir = 0; dir < 8; ++dir) {
        std::uint64_t x = shift(own, dir) & opp;
        for (int i = 0; i < kSide - 3; ++i) x |= shift(x, dir) & opp;
        moves |= shift(x, dir) & empty;
    }
    return moves;
}

constexpr std::uint64_t flips(std::uint64_t own, std::uint64_t opp, int sq)
{
    const std::uint64_t move = std::uint64_t{1} << sq;
    std::uint64_t all = 0;
    for (int dir = 0; dir < 8; ++dir) {
        std::uint64_t line = 0;
        std::uint64_t x = shift(move, dir);
        while (x & opp) {
            line |= x;
            x = shift(x, dir);
        }
        if (x & own) all |= line;
    }
    return all;
}

// Static move-ordering weights: corners first, squares next to corners last.
inline constexpr std::array<int, kSquares> kSquareWeight = {
    9, 1, 5, 5, 1, 9,
    1, 0, 3, 3, 0, 1,
    5, 3, 4, 4, 3, 5,
    5, 3, 4, 4, 3, 5,
    1, 0, 3, 3, 0, 1,
    9, 1, 5, 5, 1, 9,
};

struct Zobrist {
    std::array<std::array<std::uint64_t, 2>, kSquares> square{};
    std::uint64_t white_to_move = 0;

    constexpr Zobrist()
    {
        std::uint64_t s = 0x6f7468656c6c6f36ULL;
        for (auto& sq : square) {
            for (auto& v : sq) v = mix64(s++);
        }
        white_to_move = mix64(s);
    }
};

inline constexpr Zobrist kZobrist{};

} // namespace othello

/// 6x6 Othello. Black (X) moves first. Bit i is square (i / 6, i % 6).
struct OthelloPosition {
    std::uint64_t black = 0;
    std::uint64_t white = 0;
    bool white_to_move = false;
    std::uint64_t hash = 0;

    std::uint64_t own() const noexcept { return white_to_move ? white : black; }
    std::uint64_t opp() const noexcept { return white_to_move ? black : white; }

    friend bool operator==(const OthelloPosition& a, const OthelloPosition& b) noexcept
    {
        return a.black == b.black && a.white == b.white && a.white_to_move == b.white_to_move;
    }
};

/// Zobrist key computed from scratch.
inline std::uint64_t othello_hash(const OthelloPosition& p)
{
    std::uint64_t h = p.white_to_move ? othello::kZobrist.white_to_move : 0;
    for (int sq = 0; sq < othello::kSquares; ++sq) {
        const std::uint64_t bit = std::uint64_t{1} << sq;
        if (p.black & bit) h ^= othello::kZobrist.square[sq][0];
        if (p.white & bit) h ^= othello::kZobrist.square[sq][1];
    }
    return h;
}

inline OthelloPosition othello_standard()
{
    OthelloPosition p;
    const auto at = [](int r, int c) { return std::uint64_t{1} << (r * othello::kSide + c); };
    p.white = at(2, 2) | at(3, 3);
    p.black = at(2, 3) | at(3, 2);
    p.hash = othello_hash(p);
    return p;
}

/// Parse 36 characters of '.', 'X', 'O' (row-major) and a side to move.
inline OthelloPosition parse_othello(std::string_view board, std::string_view side)
{
    if (board.size() != othello::kSquares) {
        throw std::invalid_argument("othello board needs 36 characters, got " + std::to_string(board.size()));
    }
    OthelloPosition p;
    for (int sq = 0; sq < othello::kSquares; ++sq) {
        const std::uint64_t bit = std::uint64_t{1} << sq;
        switch (board[static_cast<std::size_t>(sq)]) {
        case '.': break;
        case 'X': p.black |= bit; break;
        case 'O': p.white |= bit; break;
        default: throw std::invalid_argument(std::string("bad othello square character '") + board[sq] + "'");
        }
    }
    if (side == "X") {
        p.white_to_move = false;
    } else if (side == "O") {
        p.white_to_move = true;
    } else {
        throw std::invalid_argument("othello side to move must be X or O");
    }
    p.hash = othello_hash(p);
    return p;
}

inline std::string format_othello(const OthelloPosition& p)
{
    std::string s(othello::kSquares, '.');
    for (int sq = 0; sq < othello::kSquares; ++sq) {
        const std::uint64_t bit = std::uint64_t{1} << sq;
        if (p.black & bit) s[static_cast<std::size_t>(sq)] = 'X';
        if (p.white & bit) s[static_cast<std::size_t>(sq)] = 'O';
    }
    return s + (p.white_to_move ? " O" : " X");
}

/// Game adapter over 6x6 Othello. A side without moves passes; the game ends
/// when neither side can move.
/// Evaluation weights. The tempo bonus goes to the side to move; without it
/// the score swings by several discs between odd and even search depths,
/// because the last mover has just gained discs.
struct OthelloWeights {
    Value disc = 3;
    Value mobility = 10;
    Value tempo = 15;
    Value final_scale = 96; // per disc, once neither side can move
};

class OthelloGame {
public:
    using Position = OthelloPosition;

    explicit OthelloGame(OthelloPosition start = othello_standard(), OthelloWeights w = {})
        : start_(start), w_(w)
    {
        if ((start.black & start.white) != 0) throw std::invalid_argument("othello: overlapping discs");
        if (((start.black | start.white) & ~othello::kFull) != 0) {
            throw std::invalid_argument("othello: discs off the 6x6 board");
        }
        start_.hash = othello_hash(start_);
    }

    Position root() const noexcept { return start_; }

    std::vector<Position> successors(const Position& p) const
    {
        std::uint64_t moves = othello::legal_moves(p.own(), p.opp());
        std::vector<Position> out;
        if (moves == 0) {
            if (othello::legal_moves(p.opp(), p.own()) == 0) return out;
            Position pass = p;
            pass.white_to_move = !p.white_to_move;
            pass.hash ^= othello::kZobrist.white_to_move;
            out.push_back(pass);
            return out;
        }
        std::array<int, othello::kSquares> squares{};
        int n = 0;
        while (moves) {
            squares[static_cast<std::size_t>(n++)] = std::countr_zero(moves);
            moves &= moves - 1;
        }
        std::stable_sort(squares.begin(), squares.begin() + n, [](int a, int b) {
            return othello::kSquareWeight[static_cast<std::size_t>(a)] >
                   othello::kSquareWeight[static_cast<std::size_t>(b)];
        });
        out.reserve(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) out.push_back(play(p, squares[static_cast<std::size_t>(i)]));
        return out;
    }

    /// Disc differential plus a mobility term, from the side to move. At the
    /// end of the game only the (scaled) disc differential counts.
    Value evaluate(const Position& p) const noexcept
    {
        const int discs = std::popcount(p.own()) - std::popcount(p.opp());
        const int mine = std::popcount(othello::legal_moves(p.own(), p.opp()));
        const int theirs = std::popcount(othello::legal_moves(p.opp(), p.own()));
        if (mine == 0 && theirs == 0) return w_.final_scale * discs;
        return w_.disc * discs + w_.mobility * (mine - theirs) + w_.tempo;
    }

    bool is_terminal(const Position& p, int remaining) const noexcept
    {
        return remaining <= 0 || game_over(p);
    }

    static bool game_over(const Position& p) noexcept
    {
        return othello::legal_moves(p.own(), p.opp()) == 0 && othello::legal_moves(p.opp(), p.own()) == 0;
    }

    std::uint64_t key(const Position& p) const noexcept { return p.hash; }
    int max_branching() const noexcept { return othello::kSquares - 4; }

    /// Place a disc for the side to move on sq; the key is updated
    /// incrementally.
    static Position play(const Position& p, int sq)
    {
        const std::uint64_t own = p.own();
        const std::uint64_t opp = p.opp();
        const std::uint64_t flipped = othello::flips(own, opp, sq);
        if (flipped == 0 || ((own | opp) >> sq & 1)) throw std::invalid_argument("othello: illegal move");
        const int mover = p.white_to_move ? 1 : 0;
        const std::uint64_t bit = std::uint64_t{1} << sq;

        Position n = p;
        std::uint64_t h = p.hash ^ othello::kZobrist.square[static_cast<std::size_t>(sq)][mover];
        for (std::uint64_t f = flipped; f; f &= f - 1) {
            const auto s = static_cast<std::size_t>(std::countr_zero(f));
            h ^= othello::kZobrist.square[s][0] ^ othello::kZobrist.square[s][1];
        }
        const std::uint64_t new_own = own | bit | flipped;
        const std::uint64_t new_opp = opp & ~flipped;
        n.black = p.white_to_move ? new_opp : new_own;
        n.white = p.white_to_move ? new_own : new_opp;
        n.white_to_move = !p.white_to_move;
        n.hash = h ^ othello::kZobrist.white_to_move;
        return n;
    }

    const OthelloWeights& weights() const noexcept { return w_; }

private:
    Position start_;
    OthelloWeights w_;
};

/// Move-path node count, counting passes as moves and finished games as
/// leaves.
inline std::uint64_t othello_perft(const OthelloGame& g, const OthelloPosition& p, int depth)
{
    if (depth == 0) return 1;
    const auto kids = g.successors(p);
    if (kids.empty()) return 1;
    std::uint64_t n = 0;
    for (const auto& k : kids) n += othello_perft(g, k, depth - 1);
    return n;
}

} // namespace mtlab
