#pragma once

#include <string>
#include <vector>

#include "lfpc/character.hpp"
#include "lfpc/eset.hpp"
#include "lfpc/translation.hpp"

namespace lfpc {

/// One cell of a locally constant function: a ball and the exact value the
/// function takes on it.
struct Cell {
    Ball ball;
    Coeff value;
    bool operator==(const Cell&) const = default;
};

/// Schwartz-Bruhat function: finitely many disjoint ball cells with exact
/// coefficients, canonical (zero cells dropped, complete sibling families
/// with a shared value merged). Used on both the time and the frequency
/// side; which side a value lives on is the caller's convention.
class SBFunction {
public:
    explicit SBFunction(const Field& f) : field_(f) {}

    static SBFunction zero(const Field& f) { return SBFunction(f); }
    static SBFunction indicator(const ESet& e);
    /// cells must be pairwise disjoint; the result is canonicalized.
    static SBFunction from_cells(const Field& f, std::vector<Cell> cells);
    /// Sums arbitrary (possibly overlapping) cells pointwise.
    static SBFunction accumulate(const Field& f, const std::vector<Cell>& cells);

    const Field& field() const { return field_; }
    const std::vector<Cell>& cells() const { return cells_; }
    bool is_zero() const { return cells_.empty(); }
    ESet support() const;
    Coeff zero_value() const { return Coeff(field_.p(), field_.q()); }

    Coeff value_at(const LaurentNumber& x) const;
    /// Value on a ball the function is constant on; throws DomainError if
    /// some cell cuts the ball properly.
    Coeff value_on(const Ball& b) const;

    SBFunction operator+(const SBFunction& other) const;
    SBFunction operator-(const SBFunction& other) const;
    SBFunction scaled(const Coeff& c) const;
    SBFunction conj() const;
    /// Pointwise product on the common refinement.
    SBFunction pointwise_mul(const SBFunction& other) const;
    SBFunction restricted(const ESet& e) const;

    /// xi -> f(p^{-j} xi): pure composition, no amplitude factor.
    SBFunction compose_dilate(int j) const;
    /// xi -> f(xi + y).
    SBFunction compose_translate(const LaurentNumber& y) const;
    /// f(xi) * chi(sign * y * xi), expanded exactly into cells at the
    /// character's constancy level.
    SBFunction mul_char(const LaurentNumber& y, int sign) const;

    bool operator==(const SBFunction& other) const {
        return field_ == other.field_ && cells_ == other.cells_;
    }

    std::string to_string() const;

private:
    Field field_;
    std::vector<Cell> cells_;
};

/// <f, g> = integral of f * conj(g); exact.
Coeff sb_inner(const SBFunction& f, const SBFunction& g);
/// ||f||^2, always real.
Coeff sb_norm_sq(const SBFunction& f);

/// The translation operator T_k (time side): shifts cells by u(k).
SBFunction sb_translate(const SBFunction& f, const TransIndex& k);
/// The unitary dilation D^j (time side): cell a + P^m goes to
/// p^j a + P^{m+j} and the coefficient picks up the exact factor q^{j/2}.
SBFunction sb_dilate(const SBFunction& f, int j);

/// Exact Fourier transform. Cell rule: the transform of ind(a + P^k) is
/// xi -> q^{-k} chi(-a xi) ind(P^{-k})(xi), expanded into cells at the
/// character's constancy level; extended linearly.
SBFunction sb_fourier(const SBFunction& f);
SBFunction sb_inv_fourier(const SBFunction& f);

/// Frequency side of D^j T_k f given f-hat:
/// xi -> q^{-j/2} chi_{u(k)}(-p^j xi) f-hat(p^j xi).
SBFunction sb_affine_fourier(const SBFunction& f_hat, int j, const TransIndex& k);

/// Integral of f over E; exact.
Coeff sb_integral_over(const SBFunction& f, const ESet& e);

/// Common refinement of two cell functions: disjoint balls covering the
/// union of supports, with the exact value of each function on every ball.
struct RefinedCell {
    Ball ball;
    Coeff first;
    Coeff second;
};
std::vector<RefinedCell> sb_refine_pair(const SBFunction& f, const SBFunction& g);

/// Step function with exact values over disjoint canonical cells. When
/// periodic_on_O is set the cells all lie inside O and the function means
/// the integral-periodic extension of that data. Weight/multiplicity
/// outputs are real-valued; multiplier-type outputs may carry complex
/// cyclotomic values in the same container.
class StepFn {
public:
    explicit StepFn(const Field& f, bool periodic = false)
        : field_(f), periodic_on_O_(periodic) {}

    static StepFn from_cells(const Field& f, std::vector<Cell> cells, bool periodic = false);
    static StepFn accumulate(const Field& f, const std::vector<Cell>& cells, bool periodic = false);
    static StepFn indicator(const ESet& e, bool periodic = false);
    static StepFn from_sbfunction(const SBFunction& f);

    const Field& field() const { return field_; }
    const std::vector<Cell>& cells() const { return cells_; }
    bool periodic_on_O() const { return periodic_on_O_; }
    bool is_zero() const { return cells_.empty(); }
    ESet support() const;

    Coeff value_at(const LaurentNumber& x) const;
    Coeff value_on(const Ball& b) const;
    bool is_real_valued() const;

    StepFn operator+(const StepFn& other) const;
    StepFn operator-(const StepFn& other) const;
    StepFn scaled(const Coeff& c) const;
    StepFn restricted(const ESet& e) const;
    StepFn compose_dilate(int j) const;
    Coeff integral() const;

    bool operator==(const StepFn& other) const {
        return field_ == other.field_ && periodic_on_O_ == other.periodic_on_O_ &&
               cells_ == other.cells_;
    }

    std::string to_string() const;

private:
    void check_periodic_domain() const;

    Field field_;
    std::vector<Cell> cells_;
    bool periodic_on_O_;
};

/// Cellwise |f|^2 as a real step function.
StepFn sb_modulus_sq(const SBFunction& f);

/// Folds every cell into O, summing values with multiplicity; the output
/// carries the periodic flag and integrates over O to the integral of the
/// input over K.
StepFn sb_periodize(const StepFn& f);

/// True for flagged periodic extensions. An unflagged compactly supported
/// step function agrees with all of its lattice translates only when it is
/// identically zero, so that is what is tested.
bool sb_is_integral_periodic(const StepFn& f);

} // namespace lfpc
