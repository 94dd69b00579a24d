#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "wordlab/empirical.hpp"
#include "wordlab/entropy.hpp"
#include "wordlab/laws.hpp"
#include "wordlab/stationary.hpp"

namespace wordlab {

enum class RateMode { annealed, interior, alpha_one, alpha_inf, exp_tail };
enum class BoundTag { exact, lower_bound };

const char* to_string(RateMode m);
const char* to_string(BoundTag t);

struct RateBreakdown {
    RateMode mode = RateMode::interior;
    double alpha = 0.0;
    double h_term = 0.0;          // H(Q | Q_ref); +inf on support violation
    double psi_per_letter = 0.0;  // H(Psi_Q | nu^{(x)N}) value used in the total
    double mean_len = 0.0;
    double total = 0.0;
    BoundTag tag = BoundTag::exact;
    std::optional<double> tr;
    std::map<int, double> psi_levels;                      // per-letter level table
    std::vector<std::pair<double, double>> tr_diagnostic;  // (tr, m_tr * Hpsi_tr)
    std::optional<std::string> witness;
};

// Detects q(n-word) = len_pmf(n) * prod nu_hat(a_k); in that case
// Psi_q = nu_hat^{(x)N} exactly and the psi term is closed form.
std::optional<Pmf<char>> detect_product_letters(const Pmf<Word>& q, double tol = 1e-12);

// Word-law relative entropy against the closed-form reference.
EntropyValue word_rel_entropy(const Pmf<Word>& q, const RefLaw& ref);
EntropyValue word_rel_entropy_truncated(const Pmf<Word>& q_tr, const RefLaw& ref, int tr);

RateBreakdown annealed_rate(const ProductProcess& Q, const RefLaw& ref);
RateBreakdown annealed_rate(const EmpiricalProcess& R, const RefLaw& ref, int n_cap);

RateBreakdown quenched_rate(const Pmf<Word>& q, const RefLaw& ref, double alpha, int L_cap,
                            std::size_t budget = 1000000);

RateBreakdown truncated_rate(const Pmf<Word>& q, const RefLaw& ref, double alpha, int tr,
                             int L_cap, std::size_t budget = 1000000);

// alpha_one: total = annealed. alpha_inf: annealed when the truncated psi
// sequence has died out (value at the largest tr <= tol), +inf otherwise.
RateBreakdown boundary_rate(const Pmf<Word>& q, const RefLaw& ref, RateMode mode, int L_cap,
                            double tol = 1e-8, std::size_t budget = 1000000);

RateBreakdown exp_tail_rate(const Pmf<Word>& q, const LengthLaw& rho, const RefLaw& ref,
                            int L_cap, double tol = 1e-9, std::size_t budget = 1000000);

// Finite-mean characterization: Psi_Q = nu^{(x)N} at all computed levels.
bool rw_membership(const Pmf<Word>& q, const LetterLaw& nu, int L_cap, double tol = 1e-9,
                   std::size_t budget = 1000000);

struct ContractionResult {
    double value = 0.0;
    bool closed_form = false;
    std::string certificate;
};

ContractionResult contract_single_word(const Pmf<Word>& q_target, const RefLaw& ref,
                                       double alpha, int L_cap, std::size_t budget = 1000000);

// ---------------------------------------------------------------------------
// Test functionals
// ---------------------------------------------------------------------------

// One bounded term of a class-C functional, acting on word ell-tuples.
struct FunctionalTerm {
    int level = 1;
    std::function<double(const WordTuple&)> g;
    double sup_norm = 0.0;
    double lipschitz = 0.0;
    std::string id;
};

// Phi(Q) = min_i int g_i d pi_{ell_i} Q.
struct TestFunctional {
    std::vector<FunctionalTerm> terms;

    int max_level() const;
    double sup_norm() const;
    double eval(const EmpiricalProcess& R) const;
};

// Single-word functional with exact expectations under product laws:
// g(w) = sum_k letter_coef[a_k] + length_term[len(w)] + table[w].
struct WordFunctional {
    std::map<char, double> letter_coef;
    std::map<int, double> length_term;
    std::map<Word, double> table;
    std::string id = "g";

    double eval(const Word& w) const;
    double length_part(int n) const;
    bool letter_linear() const { return table.empty(); }

    static WordFunctional beta_ones(double beta);  // beta * #ones
    static WordFunctional beta_diff(double beta);  // beta * (#ones - #zeros)
    static WordFunctional length_only(std::map<int, double> term);

    FunctionalTerm as_term(double sup_norm, double lipschitz) const;
};

enum class LambdaMode { annealed, quenched_interior, quenched_exp_tail };

struct VariationalResult {
    double value = 0.0;
    Pmf<char> letter_opt;
    Pmf<int> length_opt;  // atom = word length in letters
    bool certified = true;
    std::string note;
};

// Generalized convex transform over the searched product family.
//  - annealed: exact Gibbs value log int e^g d q_{rho,nu} and its tilt.
//  - quenched_interior: sup over product laws of Phi - h(q|ref) -
//    (alpha-1) m_q h(nu_hat|nu); exact per point, a certified lower bound.
//  - quenched_exp_tail: same with the letter law pinned to nu (membership
//    constraint for exponentially bounded tails).
VariationalResult lambda_variational(const WordFunctional& g, const std::vector<double>& rho_d,
                                     const LetterLaw& nu, double alpha, LambdaMode mode,
                                     int letter_grid = 129, int refine_rounds = 48);

}  // namespace wordlab
