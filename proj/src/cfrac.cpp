#include "dioph/cfrac.hpp"

#include <chrono>

#include "dioph/elimination.hpp"

namespace dioph {

int sign_linear(const Integer& P, const Integer& Q, const Rational& r, unsigned long k) {
    if (P == 0) return sgn(Q);
    // P theta + Q = P (theta - t) with t = -Q/P
    Rational t(-Q, P);
    t.canonicalize();
    auto ord = rat_cmp_kth_root(t, r, k);
    int theta_minus_t = ord == std::strong_ordering::less ? 1 : ord == std::strong_ordering::equal ? 0 : -1;
    return sgn(P) * theta_minus_t;
}

namespace {

constexpr unsigned kMaxSeedBits = 1u << 22;

// Candidate floor from an enclosure of theta, refining theta in place.
Integer seed_floor(const HomographicState& s, DyadicInterval& theta) {
    std::size_t coeff_bits = std::max({bit_length(s.A), bit_length(s.B), bit_length(s.C), bit_length(s.D)});
    unsigned bits = std::max<unsigned>(theta.precision(), static_cast<unsigned>(2 * coeff_bits + 64));
    for (;;) {
        if (theta.precision() < bits) theta = kth_root_interval(s.r, s.k, bits);
        const unsigned w = theta.precision() + 16;
        DyadicInterval den = DyadicInterval::enclose(s.C, w) * theta + DyadicInterval::enclose(s.D, w);
        if (!den.contains_zero()) {
            DyadicInterval value = (DyadicInterval::enclose(s.A, w) * theta + DyadicInterval::enclose(s.B, w)) / den;
            Integer lo = value.lo().floor();
            if (lo == value.hi().floor()) return lo;
        }
        if (bits >= kMaxSeedBits) throw std::logic_error("floor_homographic: enclosure did not separate");
        bits *= 2;
    }
}

Integer certified_floor(const HomographicState& s, DyadicInterval& theta) {
    if (s.determinant() == 0) throw DegenerateStateError("homographic state has AD - BC = 0");
    int den_sign = sign_linear(s.C, s.D, s.r, s.k);
    if (den_sign == 0) throw DegenerateStateError("homographic state has C theta + D = 0");
    Integer n = seed_floor(s, theta);
    // value - n >= 0 and value - (n + 1) < 0
    bool at_least_n = sign_linear(s.A - n * s.C, s.B - n * s.D, s.r, s.k) * den_sign >= 0;
    Integer n1 = n + 1;
    bool below_next = sign_linear(s.A - n1 * s.C, s.B - n1 * s.D, s.r, s.k) * den_sign < 0;
    if (!(at_least_n && below_next)) throw std::logic_error("floor_homographic: exact certification failed");
    return n;
}

}  // namespace

Integer floor_homographic(const HomographicState& s, const DyadicInterval* theta) {
    if (s.r <= 0) throw std::domain_error("floor_homographic: radicand must be positive");
    Rational exact;
    if (is_perfect_kth_power(s.r, s.k, &exact)) {
        if (s.determinant() == 0) throw DegenerateStateError("homographic state has AD - BC = 0");
        Rational den = s.C * exact + s.D;
        if (den == 0) throw DegenerateStateError("homographic state has C theta + D = 0");
        Rational value = (s.A * exact + s.B) / den;
        Integer out;
        mpz_fdiv_q(out.get_mpz_t(), value.get_num_mpz_t(), value.get_den_mpz_t());
        return out;
    }
    DyadicInterval seed = theta ? *theta : kth_root_interval(s.r, s.k, 64);
    return certified_floor(s, seed);
}

// ---------------------------------------------------------------------------
// ContinuedFraction

ContinuedFraction::ContinuedFraction(Rational r, unsigned long k) : r_(std::move(r)), k_(k) {
    if (r_ <= 0) throw std::domain_error("ContinuedFraction: radicand must be positive");
    if (k_ == 0) throw std::domain_error("ContinuedFraction: k must be positive");
    Rational root;
    if (is_perfect_kth_power(r_, k_, &root)) {
        exact_ = root;
        rational_tail_ = root;
    }
    state_ = HomographicState{1, 0, 0, 1, r_, k_};
    theta_ = kth_root_interval(r_, k_, 128);
}

Integer ContinuedFraction::next_quotient() {
    if (exact_) {
        Integer a;
        mpz_fdiv_q(a.get_mpz_t(), rational_tail_.get_num_mpz_t(), rational_tail_.get_den_mpz_t());
        Rational rest = rational_tail_ - a;
        if (rest == 0) {
            terminated_ = true;
        } else {
            rational_tail_ = 1 / rest;
        }
        return a;
    }
    Integer a = certified_floor(state_, theta_);
    // 1 / (value - a) = (C theta + D) / ((A - aC) theta + (B - aD))
    HomographicState next{state_.C, state_.D, state_.A - a * state_.C, state_.B - a * state_.D, r_, k_};
    state_ = std::move(next);
    return a;
}

bool ContinuedFraction::step() {
    if (terminated_) return false;
    Integer a = next_quotient();
    const std::size_t i = records_.size();
    Integer p_prev = i >= 1 ? records_[i - 1].p : Integer(1);
    Integer q_prev = i >= 1 ? records_[i - 1].q : Integer(0);
    Integer p_prev2 = i >= 2 ? records_[i - 2].p : Integer(i == 1 ? 1 : 0);
    Integer q_prev2 = i >= 2 ? records_[i - 2].q : Integer(i == 1 ? 0 : 1);
    records_.push_back({i, a, a * p_prev + p_prev2, a * q_prev + q_prev2});
    return true;
}

const ConvergentRecord* ContinuedFraction::at(std::size_t i) {
    while (records_.size() <= i) {
        if (!step()) return nullptr;
    }
    return &records_[i];
}

void ContinuedFraction::extend_past(const Integer& q_cap) {
    while (records_.empty() || records_.back().q <= q_cap) {
        if (!step()) return;
    }
}

std::vector<ConvergentRecord> cf_expand(const Rational& r, unsigned long k, const Integer& q_cap) {
    if (q_cap < 1) throw std::invalid_argument("cf_expand: q_cap must be positive");
    ContinuedFraction cf(r, k);
    cf.extend_past(q_cap);
    return cf.records();
}

std::vector<ConvergentRecord> cf_expand(const CaseParams& c, const Integer& q_cap) {
    return cf_expand(c.radicand(), c.k, q_cap);
}

// ---------------------------------------------------------------------------
// Bounds

namespace {

Integer two_k_ac(const CaseParams& c) { return pow(Integer(2), c.k) * c.a * c.c; }

Rational ratio(const Integer& n, const Integer& d) {
    Rational q(n, d);
    q.canonicalize();
    return q;
}

}  // namespace

DyadicInterval c_constant(const CaseParams& c, unsigned precision) {
    Integer t = two_k_ac(c);
    return kth_root_interval(ratio(t - 2, t), c.k, precision);
}

DyadicInterval qj_bound_enclosure(const CaseParams& c, const DyadicInterval& lambda, unsigned precision) {
    const unsigned w = precision + 16;
    const long k = static_cast<long>(c.k);
    DyadicInterval denom = DyadicInterval::point(Dyadic(k), w) - lambda.scaled(1);
    if (!denom.certainly_positive()) throw UndecidableError("k - 2 lambda not certified positive", precision);

    Integer t = two_k_ac(c);
    DyadicInterval mu_k = mu(c.k, w).enclosure;
    DyadicInterval alpha = kth_root_interval(c.alpha_pow_k(), c.k, w);
    DyadicInterval c_neg = kth_root_interval(pow(ratio(t, t - 2), c.k - 1), c.k, w);  // C^{-(k-1)}
    DyadicInterval n_over_ac = DyadicInterval::enclose(ratio(c.N(), Integer(c.a) * c.c), w);
    DyadicInterval base = (mu_k * alpha * n_over_ac * c_neg).scaled(4);
    DyadicInterval exponent = DyadicInterval::point(Dyadic(2), w) / denom;
    return interval_pow(base, exponent).rounded(precision);
}

Integer qj_bound(const CaseParams& c, unsigned precision) {
    LambdaBundle lam = lambda_case(c.k, c.D(), precision);
    return qj_bound_enclosure(c, lam.lambda, precision).hi().ceil();
}

DyadicInterval aj1_bound_enclosure(const CaseParams& c, unsigned precision) {
    if (c.k < 7) throw std::invalid_argument("aj1_bound_enclosure: k must be at least 7");
    const unsigned w = precision + 16;
    const unsigned long k = c.k, e = c.k - 4;
    Integer t = two_k_ac(c);

    DyadicInterval alpha = kth_root_interval(c.alpha_pow_k(), k, w);
    DyadicInterval front = DyadicInterval::enclose(ratio(Integer(k) * c.a * c.c * c.x, 2), w) / alpha;
    // sqrt(kN)^{k-4}
    DyadicInterval sqrt_part = kth_root_interval(Rational(pow(Integer(Integer(k) * c.N()), e)), 2, w);
    // (a^{3/k} c^{2/k})^{k-4}
    DyadicInterval root_part =
        kth_root_interval(Rational(pow(Integer(c.a), 3 * e) * pow(Integer(c.c), 2 * e)), k, w);
    DyadicInterval x_part = DyadicInterval::enclose(pow(Integer(c.x), e), w);
    DyadicInterval c_pow = kth_root_interval(pow(ratio(t - 2, t), k - 1), k, w);  // C^{k-1}

    DyadicInterval value = front * sqrt_part / (root_part * x_part) * c_pow;
    return (value - DyadicInterval::point(Dyadic(2), w)).rounded(precision);
}

Rational aj1_lower_bound(const CaseParams& c, unsigned precision) {
    return aj1_bound_enclosure(c, precision).lo().to_rational();
}

// ---------------------------------------------------------------------------
// Case verification

std::string to_string(CaseReason reason) {
    switch (reason) {
        case CaseReason::no_admissible_j: return "no-admissible-J";
        case CaseReason::all_j_contradicted: return "all-J-contradicted";
        case CaseReason::survivor: return "FAILURE-survivor";
        case CaseReason::undecidable: return "undecidable";
    }
    return "undecidable";
}

CaseReason case_reason_from_string(const std::string& text) {
    for (CaseReason r : {CaseReason::no_admissible_j, CaseReason::all_j_contradicted, CaseReason::survivor,
                         CaseReason::undecidable}) {
        if (to_string(r) == text) return r;
    }
    throw std::invalid_argument("unknown case reason '" + text + "'");
}

std::string to_string(CandidateStatus status) {
    switch (status) {
        case CandidateStatus::contradicted: return "contradicted";
        case CandidateStatus::survivor: return "survivor";
        case CandidateStatus::undecided: return "undecided";
    }
    return "undecided";
}

CaseCertificate verify_case(const CaseParams& c, const VerifyCaseOptions& options) {
    const auto started = std::chrono::steady_clock::now();
    if (!in_S(c.k, c.D())) throw std::invalid_argument("verify_case: (k, a^2 c x^k) is not in S");
    if (c.x < 2 || c.a < 1 || c.c < 1) throw std::invalid_argument("verify_case: need a, c >= 1 and x >= 2");

    CaseCertificate cert{c, c.N(), "", "", 0, {}, false, CaseReason::undecidable, 0, 0.0, ""};
    ContinuedFraction cf(c.radicand(), c.k);
    const unsigned cap = options.policy.cap_bits;
    unsigned bits = std::max(1u, std::min(options.policy.start_bits, cap));

    auto finish = [&](CaseReason reason) {
        cert.reason = reason;
        cert.eliminated = reason == CaseReason::no_admissible_j || reason == CaseReason::all_j_contradicted;
        cert.precision_bits = bits;
        cert.wall_time_seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
        return cert;
    };

    for (;; bits = std::min(bits * 2, cap)) {
        DyadicInterval q_enclosure;
        try {
            LambdaBundle lam = lambda_case(c.k, c.D(), bits);
            cert.lambda_lo = lam.lambda.lo().to_decimal(30, Rounding::down);
            cert.lambda_hi = lam.lambda.hi().to_decimal(30, Rounding::up);
            q_enclosure = qj_bound_enclosure(c, lam.lambda, bits);
        } catch (const UndecidableError& e) {
            if (bits >= cap) {
                cert.note = e.what();
                cert.candidates.clear();
                return finish(CaseReason::undecidable);
            }
            continue;
        }
        cert.q_cap = q_enclosure.hi().ceil();

        DyadicInterval bound = options.lower_bound_override
                                   ? DyadicInterval::enclose(*options.lower_bound_override, bits)
                                   : aj1_bound_enclosure(c, bits);
        const std::string bound_text = bound.lo().to_decimal(30, Rounding::down);

        cf.extend_past(cert.q_cap);
        cert.candidates.clear();
        bool survivor = false, undecided = false;
        // J is even and nonzero; q_J <= z^2 <= q_cap.
        for (std::size_t J = 2;; J += 2) {
            const ConvergentRecord* rec = cf.at(J);
            if (!rec || rec->q > cert.q_cap) break;
            CandidateRecord cand{J, rec->p, rec->q, std::nullopt, bound_text, CandidateStatus::contradicted};
            if (const ConvergentRecord* next = cf.at(J + 1)) {
                cand.a_next = next->quotient;
                Dyadic a_next(next->quotient);
                if (a_next <= bound.lo()) {
                    cand.status = CandidateStatus::contradicted;
                } else if (a_next > bound.hi()) {
                    cand.status = CandidateStatus::survivor;
                    survivor = true;
                } else {
                    cand.status = CandidateStatus::undecided;
                    undecided = true;
                }
            }
            // Without a next quotient alpha/x = p_J/q_J exactly, contradicting alpha > beta.
            cert.candidates.push_back(std::move(cand));
        }

        if (survivor) return finish(CaseReason::survivor);
        if (undecided) {
            if (bits >= cap) {
                cert.note = "a_{J+1} bound not separated at precision cap";
                return finish(CaseReason::undecidable);
            }
            continue;
        }
        return finish(cert.candidates.empty() ? CaseReason::no_admissible_j : CaseReason::all_j_contradicted);
    }
}

}  // namespace dioph
