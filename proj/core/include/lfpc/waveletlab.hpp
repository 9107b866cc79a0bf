#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "lfpc/sbfunc.hpp"

namespace lfpc {

/// The cell on which a failed condition is reproducible, together with the
/// exact value observed there.
struct Witness {
    Ball cell;
    std::string value;
};

/// Outcome of a verifier. When ok is false the witness names a cell on
/// which re-evaluating the failed clause reproduces the defect. The report
/// carries exact value strings in a stable order.
struct Verdict {
    bool ok = false;
    std::string condition;
    std::optional<Witness> witness;
    std::vector<std::pair<std::string, std::string>> report;

    static Verdict pass(std::string condition) {
        Verdict v;
        v.ok = true;
        v.condition = std::move(condition);
        return v;
    }
    static Verdict fail(std::string condition, Witness w) {
        Verdict v;
        v.ok = false;
        v.condition = std::move(condition);
        v.witness = std::move(w);
        return v;
    }
    Verdict& note(std::string key, std::string value) {
        report.emplace_back(std::move(key), std::move(value));
        return *this;
    }
};

/// A candidate multiwavelet given on the frequency side: L functions
/// hat_psi_1, ..., hat_psi_L.
class MultiwaveletCandidate {
public:
    explicit MultiwaveletCandidate(std::vector<SBFunction> hat_psis);

    const std::vector<SBFunction>& hat_psis() const { return hat_psis_; }
    const Field& field() const { return hat_psis_.front().field(); }
    int order() const { return static_cast<int>(hat_psis_.size()); }

private:
    std::vector<SBFunction> hat_psis_;
};

/// Both characterization clauses of the Parseval frame property for the
/// affine system of the candidate, decided exactly:
/// (i) the full dilation sum of sum_m |hat_psi_m|^2 is 1 a.e., reduced to
///     an exact tiling test on the unit annulus (a zero-centered cell with
///     nonzero value makes the sum diverge and fails immediately);
/// (ii) every cross term against the translate u(s), s not divisible by q,
///      vanishes; the support bound makes the double sum finite.
Verdict verify_affine_parseval(const MultiwaveletCandidate& cand);

/// Parseval plus exact unit norms.
Verdict is_orthonormal_multiwavelet(const MultiwaveletCandidate& cand);

/// Orthogonality of distinct dilation levels of the generated translation
/// space, checked through the frequency-side generators of the dilated
/// spaces. The dilation range is truncated where support separation makes
/// orthogonality automatic; min_levels can force a deeper exhaustive range.
/// Throws DomainError when some support contains every neighborhood of
/// zero (no finite check exists at desk scale).
Verdict is_semi_orthogonal(const MultiwaveletCandidate& cand, int min_levels = 0);

/// The lattice-folded squared modulus of a generator transform.
StepFn periodization_weight(const SBFunction& phi_hat);
/// Weight takes only the values 0 and 1; the spectrum is reported.
Verdict is_parseval_generator(const SBFunction& phi_hat);
/// Weight is identically 1 on O.
Verdict is_orthonormal_generator(const SBFunction& phi_hat);

/// Folded cross product of two generator transforms vanishes, i.e. the
/// generated principal translation-invariant spaces are orthogonal.
Verdict pti_cross_orthogonality(const SBFunction& phi1_hat, const SBFunction& phi2_hat);

/// Membership of f in the principal translation-invariant space generated
/// by phi: f-hat = r * phi-hat for an integral periodic r.
struct MembershipResult {
    Verdict verdict;
    StepFn multiplier; // integral periodic; cyclotomic (possibly complex) values
};
MembershipResult pti_membership(const SBFunction& f_hat, const SBFunction& phi_hat);

/// The truncated fiber (f-hat(xi0 + u(k)))_{k < q^window} over a residue
/// cell. Throws DomainError if f-hat is not constant on some translate of
/// the cell and WindowError if the support sticks out of the window.
std::vector<Coeff> fiber(const SBFunction& f_hat, const Ball& xi0, int window);

/// Multiplicity and spectral data of the space generated by a family of
/// Parseval generators with pairwise orthogonal translation spaces. When
/// the preconditions fail, precheck names the offending generator or pair
/// and the functions are empty.
struct GeneratorAnalysis {
    Verdict precheck;
    StepFn multiplicity; // integral periodic, integer valued
    StepFn spectral;     // sigma on K: sum of |phi_n|^2
};
GeneratorAnalysis multiplicity_from_generators(const std::vector<SBFunction>& gens);
StepFn spectral_from_generators(const std::vector<SBFunction>& gens);

/// Spectral and multiplicity functions of the space of negative dilates of
/// a candidate. Requires clause (i) of the Parseval characterization; when
/// it holds, the tail of the dilation sum is exactly 1 on P^{tail_level}
/// and sigma is a finite step function including that zero-centered tail
/// cell. When it fails, sigma is only the windowed explicit sum outside
/// P^{tail_level} and resolved_near_zero is false.
struct DilationAnalysis {
    Verdict condition_i;
    bool resolved_near_zero = false;
    int tail_level = 0;
    StepFn sigma;
    StepFn multiplicity;
    Coeff integral;         // integral of the multiplicity over O
    Verdict integral_bound; // integral <= L/(q-1), compared exactly
};
DilationAnalysis negative_dilates_multiplicity(const MultiwaveletCandidate& cand);

/// The same triple-sum function computed by an independent route:
/// pointwise evaluation of the tail sums on a uniform refinement of O.
/// Used as a cross-check against negative_dilates_multiplicity.
StepFn dimension_function(const MultiwaveletCandidate& cand);

enum class ConsistencyMode { Inequality, Equality };

/// The consistency equation for an integral periodic, rational-valued m:
/// sum_{d<q} m(p(xi+u(d))) - m(xi) <= L (or == L in Equality mode),
/// decided exactly on a common refinement of O.
Verdict consistency_check(const StepFn& m, int order, ConsistencyMode mode);

/// Orthonormal multiwavelet whose multiplicity function is identically 1.
Verdict is_mra_multiwavelet(const MultiwaveletCandidate& cand);

enum class WaveletSetMode { Parseval, Orthonormal };

/// Tiling characterization of (Parseval) multiwavelet sets: the union
/// tiles K by dilation, each piece tiles (a subset of / all of) K by
/// translation, and the pieces are pairwise disjoint.
Verdict verify_wavelet_set(const std::vector<ESet>& pieces, WaveletSetMode mode);

/// Scaling-set characterization: translation tiling, dilation covering,
/// and refinement S inside p^{-1}S; derives the wavelet set
/// W = p^{-1}S \ S, its canonical translation-tiling decomposition, and
/// checks the exact telescoping reconstruction of S from W.
struct ScalingSetResult {
    Verdict verdict;
    ESet wavelet_set;
    std::vector<ESet> decomposition;
    Verdict wavelet_verdict;
};
ScalingSetResult verify_scaling_set(const ESet& s, WaveletSetMode mode);

/// Scaling-function characterization: Parseval generator, unit modulus at
/// zero, and existence of the integral periodic filter m0 with
/// phi-hat(xi) = m0(p xi) phi-hat(p xi); returns the extracted filter.
struct ScalingFunctionResult {
    Verdict verdict;
    StepFn filter;
};
ScalingFunctionResult verify_scaling_function(const SBFunction& phi_hat);

/// The Shannon-type orthonormal multiwavelet of order q-1:
/// hat_psi_i = ind(O + u(i)).
MultiwaveletCandidate shannon_multiwavelet(const Field& f);
/// Parseval wavelet of order 1 supported on the annulus P^m \ P^{m+1}.
MultiwaveletCandidate annulus_parseval_wavelet(const Field& f, int m);
/// Parseval family of order q-1 supported on P^m + p^m u(i): the Shannon
/// pieces scaled m levels down.
MultiwaveletCandidate scaled_shannon_family(const Field& f, int m);

} // namespace lfpc
