#pragma once

// First Dirichlet eigenvalues of spherical cones.
//
// For a domain Omega in an equatorial S^{n-1} of S^n with first eigenvalue
// lambda, TC(Omega, r0) is the set of points within geodesic distance r0 of a
// pole whose direction lies in Omega. Separating variables with the radial
// factor sin^m r gives
//
//   lambda = m^2 + m (n - 2),  m = (2 - n)/2 + sqrt((2 - n)^2/4 + lambda),
//
// the double cone (r0 = pi) has eigenvalue lambda + m, and for r0 < pi the
// eigenvalue mu is the first zero of
//
//   F(mu) = 2F1(a(mu), b(mu); c; (1 - cos r0)/2),
//   a, b  = [1 + sqrt((n-2)^2 + 4 lambda) +- sqrt((n-1)^2 + 4 mu)] / 2,
//   c     = [2 + sqrt((n-2)^2 + 4 lambda)] / 2.
//
// The Brownian exit-time decay exponent of the cone over D in S^n is
//
//   2a = sqrt(((n-1)/2)^2 + lambda_1(D)) - (n-1)/2,
//
// so the expected exit time is finite iff lambda_1(D) > 2n + 2.

#include <string>
#include <vector>

namespace capture {

struct ConeSpec {
    int n = 2;            // dimension of the ambient sphere S^n
    double lambda = 0.0;  // first Dirichlet eigenvalue of the base in S^{n-1}
    double r0 = 0.0;      // truncation radius in (0, pi]
};

void validate(const ConeSpec& spec);

struct Bracket {
    double lo = 0.0;
    double hi = 0.0;

    bool operator==(const Bracket&) const = default;
};

struct EigenResult {
    double mu = 0.0;
    double m = 0.0;
    Bracket bracket;
    int evals = 0;            // hypergeometric evaluations
    bool closed_form = false;  // r0 == pi

    bool operator==(const EigenResult&) const = default;
};

struct RootOptions {
    double mu_tol = 1e-10;
    int prescan = 64;
};

double m_exponent(int n, double lambda);
EigenResult double_cone_eigen(int n, double lambda);
// Eigenvalue of the second radial mode sin^m r cos r of the double cone.
double second_mode_eigen(int n, double lambda);

// F(mu) above; its first zero in mu is the truncated-cone eigenvalue.
double truncation_function(const ConeSpec& spec, double mu);
EigenResult truncated_cone_eigen(const ConeSpec& spec, const RootOptions& opts = {});

// Distance from a vertex to the centre of the opposite face of the regular
// (k+2)-cell tessellation of S^k: arccos(-sqrt(k / (2(k+1)))).
double vertex_angle_delta(int k);

double decay_exponent(int n, double lambda_d);

struct HatTableRow {
    int n = 0;
    double lambda_hat = 0.0;  // lambda_1 of the comparison domain in S^{n-1}
    double a_lower = 0.0;

    bool operator==(const HatTableRow&) const = default;
};

// Rows n = 2..max_n, starting from the interval [0, 2pi/3] (eigenvalue 9/4)
// and coning with radius delta(n) at each step.
std::vector<HatTableRow> hat_t_table(int max_n);

// lambda with mu(3, lambda, delta(3)) = 8.
double lambda_critical(double tol = 1e-13);

struct RayleighOptions {
    int panels = 160;  // composite Gauss panels per polar direction
};

// Rayleigh quotient of sin(dist(x, boundary)) over the triangle T2.
double rayleigh_bound_T2(const RayleighOptions& opts = {});
// (2 pi + sqrt 3) / (pi - sqrt 3)
double rayleigh_bound_T2_closed_form();

struct EvidenceStep {
    std::string quantity;
    double value = 0.0;
    std::string source;

    bool operator==(const EvidenceStep&) const = default;
};

struct Verdict {
    int n = 0;
    bool finite = false;
    std::vector<EvidenceStep> chain;

    bool operator==(const Verdict&) const = default;
};

// Assembles the eigenvalue chain deciding whether n Brownian predators
// capture the prey in finite expected time.
Verdict verdict(int n);

}  // namespace capture
