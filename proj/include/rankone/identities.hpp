#pragma once

#include <map>
#include <random>
#include <string>
#include <vector>

#include "rankone/model.hpp"
#include "rankone/quad.hpp"

namespace rankone {

enum class IdentityId { A1, EulerTransf, EulerIntRep, A4, Pfaff, GR7512, A5, GaussValue, A7 };

std::string identity_name(IdentityId id);
IdentityId identity_from_string(const std::string& s);
std::vector<IdentityId> all_identities();

/// Named parameters for one identity instance.
struct IdentityCase {
    IdentityId id;
    std::map<std::string, Complex> params;
};

/// Evaluates the quoted validity condition for the case.
bool case_valid(const IdentityCase& c);

struct IdentityReport {
    IdentityCase c;
    Complex lhs;
    Complex rhs;
    double relerr = 0.0;
    bool pass = false;
};

/// lhs by quadrature (integral identities) or series (transformation
/// identities), rhs by the closed formula; throws InvalidCaseError when the
/// validity predicate is false.
IdentityReport verify_identity(const IdentityCase& c, double tol);

/// Draws a case inside the identity's validity region (seeded; real parts in
/// [0.1, 3], imaginary parts in [-5, 5], >= 0.05 away from Gamma poles).
IdentityCase draw_case(IdentityId id, std::mt19937_64& rng);

/// A deliberately invalid case for the rejection tests.
IdentityCase invalid_case(IdentityId id);

struct LadderStage {
    std::string label;
    Complex value;
    double abs_err;
};

struct LadderReport {
    std::vector<LadderStage> stages;        // stage0 .. stage8
    std::vector<std::string> transitions;   // identity applied between stage k and k+1
    std::vector<double> pair_relerr;        // consecutive relative differences
    double max_pairwise_relerr = 0.0;
};

/// Evaluates every intermediate display of the special-value derivation as a
/// number; stage0 is the defining integral, stage8 the closed form.
/// Requires p' > 0 and q > 0 (degenerate axes are compared endpoint to
/// endpoint via a_value_numeric vs a_value_closed instead).
LadderReport derivation_ladder(const SpacePair& sp, const SpectralParams& params, double tol);

}  // namespace rankone
