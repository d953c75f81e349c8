#include <gtest/gtest.h>

#include <array>
#include <random>
#include <string>

#include "mtlab/drivers.hpp"
#include "mtlab/oracles.hpp"
#include "mtlab/othello.hpp"

namespace mtlab {
namespace {

// Independent reference: a plain 6x6 array board with ray walking.
struct Mailbox {
    std::array<char, 36> sq{};
    char to_move = 'X';

    static Mailbox from(const OthelloPosition& p)
    {
        Mailbox m;
        const std::string s = format_othello(p);
        for (int i = 0; i < 36; ++i) m.sq[i] = s[i];
        m.to_move = s[37];
        return m;
    }

    char other() const { return to_move == 'X' ? 'O' : 'X'; }

    int flips_in_dir(int r, int c, int dr, int dc) const
    {
        int n = 0;
        r += dr;
        c += dc;
        while (r >= 0 && r < 6 && c >= 0 && c < 6 && sq[r * 6 + c] == other()) {
            ++n;
            r += dr;
            c += dc;
        }
        if (n == 0 || r < 0 || r >= 6 || c < 0 || c >= 6 || sq[r * 6 + c] != to_move) return 0;
        return n;
    }

    bool legal(int i) const
    {
        if (sq[i] != '.') return false;
        for (int dr = -1; dr <= 1; ++dr)
            for (int dc = -1; dc <= 1; ++dc)
                if ((dr || dc) && flips_in_dir(i / 6, i % 6, dr, dc)) return true;
        return false;
    }

    std::vector<int> moves() const
    {
        std::vector<int> out;
        for (int i = 0; i < 36; ++i)
            if (legal(i)) out.push_back(i);
        return out;
    }

    Mailbox play(int i) const
    {
        Mailbox m = *this;
        for (int dr = -1; dr <= 1; ++dr) {
            for (int dc = -1; dc <= 1; ++dc) {
                if (!dr && !dc) continue;
                const int n = flips_in_dir(i / 6, i % 6, dr, dc);
                for (int k = 1; k <= n; ++k) m.sq[(i / 6 + k * dr) * 6 + (i % 6 + k * dc)] = to_move;
            }
        }
        m.sq[i] = to_move;
        m.to_move = other();
        return m;
    }

    Mailbox pass() const
    {
        Mailbox m = *this;
        m.to_move = other();
        return m;
    }
};

std::uint64_t mailbox_perft(const Mailbox& m, int depth)
{
    if (depth == 0) return 1;
    const auto mv = m.moves();
    if (mv.empty()) {
        if (m.pass().moves().empty()) return 1;
        return mailbox_perft(m.pass(), depth - 1);
    }
    std::uint64_t n = 0;
    for (int i : mv) n += mailbox_perft(m.play(i), depth - 1);
    return n;
}

TEST(Othello, StandardStart)
{
    const auto p = othello_standard();
    EXPECT_EQ(format_othello(p), "..............OX....XO.............. X");
    OthelloGame g;
    EXPECT_EQ(g.successors(g.root()).size(), 4u);
    EXPECT_EQ(g.evaluate(g.root()), g.weights().tempo); // level material and mobility
}

TEST(Othello, PerftMatchesMailbox)
{
    OthelloGame g;
    const Mailbox m = Mailbox::from(g.root());
    for (int d = 1; d <= 5; ++d) EXPECT_EQ(othello_perft(g, g.root(), d), mailbox_perft(m, d)) << d;
}

TEST(Othello, PerftKnownValues)
{
    OthelloGame g;
    // Frozen from the mailbox reference above.
    const std::array<std::uint64_t, 6> expected = {1, 4, 12, 56, 244, 1364};
    for (int d = 0; d < 6; ++d) EXPECT_EQ(othello_perft(g, g.root(), d), expected[d]) << d;
}

// Random playouts: every successor matches the mailbox reference and the
// incremental key matches a from-scratch key.
TEST(Othello, RandomPlayoutsAgreeWithMailbox)
{
    OthelloGame g;
    std::mt19937_64 rng(2024);
    for (int game = 0; game < 200; ++game) {
        OthelloPosition p = g.root();
        for (int ply = 0; ply < 40 && !OthelloGame::game_over(p); ++ply) {
            const Mailbox m = Mailbox::from(p);
            const auto kids = g.successors(p);
            auto mv = m.moves();
            if (mv.empty()) {
                ASSERT_EQ(kids.size(), 1u);
                ASSERT_EQ(format_othello(kids[0]), format_othello(p).substr(0, 37) + m.other());
            } else {
                ASSERT_EQ(kids.size(), mv.size());
                std::vector<std::string> want, got;
                for (int i : mv) {
                    const Mailbox n = m.play(i);
                    want.push_back(std::string(n.sq.begin(), n.sq.end()) + " " + n.to_move);
                }
                for (const auto& k : kids) got.push_back(format_othello(k));
                std::sort(want.begin(), want.end());
                std::sort(got.begin(), got.end());
                ASSERT_EQ(got, want);
            }
            for (const auto& k : kids) ASSERT_EQ(k.hash, othello_hash(k));
            p = kids[rng() % kids.size()];
        }
    }
}

TEST(Othello, FinishedGameScoresDiscDifferential)
{
    // 20 X, 16 O, full board: game over, X ahead.
    std::string board(20, 'X');
    board += std::string(16, 'O');
    const OthelloGame g(parse_othello(board, "X"));
    EXPECT_TRUE(OthelloGame::game_over(g.root()));
    EXPECT_TRUE(g.successors(g.root()).empty());
    EXPECT_GT(g.evaluate(g.root()), 0);
    EXPECT_EQ(g.evaluate(g.root()), g.weights().final_scale * 4);
    const OthelloGame h(parse_othello(board, "O"));
    EXPECT_EQ(h.evaluate(h.root()), -h.weights().final_scale * 4);
    EXPECT_EQ(brute_minimax(g, 5), g.weights().final_scale * 4);
}

TEST(Othello, EvaluationTerms)
{
    // Any opening move leaves 4 X discs against 1 O disc, O to move.
    const OthelloGame g(othello_standard(), {.disc = 1, .mobility = 0, .tempo = 0, .final_scale = 1});
    const auto first = g.successors(g.root()).front();
    EXPECT_EQ(g.evaluate(first), -3); // O to move, down 1 to 4

    const OthelloGame m(othello_standard(), {.disc = 0, .mobility = 1, .tempo = 0, .final_scale = 1});
    const Mailbox mb = Mailbox::from(first);
    const int mine = int(mb.moves().size());
    const int theirs = int(mb.pass().moves().size());
    EXPECT_EQ(m.evaluate(first), mine - theirs);

    const OthelloGame t(othello_standard(), {.disc = 0, .mobility = 0, .tempo = 7, .final_scale = 1});
    EXPECT_EQ(t.evaluate(first), 7);
}

TEST(Othello, PassIsASingleSuccessor)
{
    // Row 0 is "O X . . . .": X cannot move, O can capture by playing c.
    const OthelloGame g(parse_othello("OX" + std::string(34, '.'), "X"));
    const auto kids = g.successors(g.root());
    ASSERT_EQ(kids.size(), 1u);
    EXPECT_TRUE(kids[0].white_to_move);
    EXPECT_EQ(kids[0].black, g.root().black);
    EXPECT_EQ(kids[0].hash, othello_hash(kids[0]));
}

TEST(Othello, RejectsMalformedBoards)
{
    EXPECT_THROW(parse_othello(std::string(35, '.'), "X"), std::invalid_argument);
    EXPECT_THROW(parse_othello(std::string(36, '#'), "X"), std::invalid_argument);
    EXPECT_THROW(parse_othello(std::string(36, '.'), "B"), std::invalid_argument);
    EXPECT_THROW(OthelloGame::play(othello_standard(), 0), std::invalid_argument);
}

TEST(Othello, AllAlgorithmsAgreeWithBruteForce)
{
    const OthelloGame g;
    for (int d = 1; d <= 4; ++d) {
        const Value f = brute_minimax(g, d);
        for (Algorithm a : kAllAlgorithms) {
            TranspositionTable table(16);
            Searcher<OthelloGame> s(g, table);
            EXPECT_EQ(run_algorithm(s, a, d, {.aspiration_delta = 16}).value, f) << to_string(a) << " d" << d;
        }
    }
}

} // namespace
} // namespace mtlab
