#ifndef RATASP_EVALUATOR_HH
#define RATASP_EVALUATOR_HH

#include "ratasp/ground_program.hh"

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace ratasp {

class TooLargeForBruteForce : public std::runtime_error {
public:
    explicit TooLargeForBruteForce(std::string const &what) : std::runtime_error(what) { }
};

// Exhaustive search is refused beyond this many non-fact atoms.
constexpr std::size_t max_brute_force_atoms = 24;

// Membership vector over the atom table.
using Interpretation = std::vector<bool>;

// Level to cost; an absent level costs 0.
using CostVector = std::map<Rational, Rational>;

bool satisfied(GroundLiteral const &l, Interpretation const &i);
bool satisfied(GroundAggregate const &a, Interpretation const &i);
bool body_true(std::vector<GroundLiteral> const &body, std::vector<GroundAggregate> const &aggs,
               Interpretation const &i);
bool is_model(GroundProgram const &g, Interpretation const &i);
// No atom together with its strong negation.
bool consistent(GroundProgram const &g, Interpretation const &i);

// FLP reduct: the rules whose body is true w.r.t. i.
GroundProgram reduct(GroundProgram const &g, Interpretation const &i);

// Answer sets in canonical order (atoms compared in term order). The
// parallel and serial versions return identical results.
std::vector<Interpretation> answer_sets(GroundProgram const &g);
std::vector<Interpretation> answer_sets_serial(GroundProgram const &g);

CostVector costs(GroundProgram const &g, Interpretation const &i);
// Negative when a is better than b: lower cost at the highest level where
// they differ.
int compare_costs(CostVector const &a, CostVector const &b);
// The answer sets not dominated by any other.
std::vector<Interpretation> optimal_answer_sets(GroundProgram const &g);

// "{a(3/4), pow(3/4,9/16)}"
std::string format_answer_set(GroundProgram const &g, Interpretation const &i, PrintOptions const &opts = {});
// "COSTS 1:5/6 0:1", levels of all weak constraints in decreasing order.
std::string format_costs(GroundProgram const &g, CostVector const &c, PrintOptions const &opts = {});

} // namespace ratasp

#endif // RATASP_EVALUATOR_HH
