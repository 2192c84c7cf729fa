#include "enthash/bell.hpp"

#include <cmath>
#include <stdexcept>

namespace enthash {

BellLabel BellLabel::from_index(int idx) {
    if (idx < 0 || idx > 3) throw std::out_of_range("Bell label index not in 0..3");
    return {static_cast<std::uint8_t>((idx >> 1) & 1),
            static_cast<std::uint8_t>(idx & 1)};
}

void BellDiagonal::validate() {
    double sum = 0;
    for (double v : p) {
        if (!(v >= 0.0))
            throw std::invalid_argument("Bell-diagonal entry negative or NaN");
        sum += v;
    }
    if (std::abs(sum - 1.0) > 1e-12)
        throw std::invalid_argument("Bell-diagonal entries do not sum to 1");
    for (double& v : p) v /= sum;
}

void NoiseParams::validate() const {
    if (!(alpha >= 0.0 && alpha <= 1.0))
        throw std::invalid_argument("alpha not in [0, 1]");
    if (!(q >= 0.0 && q <= 1.0)) throw std::invalid_argument("q not in [0, 1]");
}

std::pair<BellLabel, BellLabel> bilateral_cnot(BellLabel source, BellLabel target) {
    BellLabel new_source{static_cast<std::uint8_t>(source.phase ^ target.phase),
                         source.amplitude};
    BellLabel new_target{target.phase,
                         static_cast<std::uint8_t>(source.amplitude ^ target.amplitude)};
    return {new_source, new_target};
}

std::optional<int> select_bit(int symbol, BellLabel l) {
    switch (symbol) {
        case 0: return std::nullopt;
        case 1: return l.amplitude;
        case 2: return l.phase;
        case 3: return l.phase ^ l.amplitude;
        default: throw std::invalid_argument("round symbol not in 0..3");
    }
}

BellLabel symbol_op(int symbol, BellLabel l) {
    switch (symbol) {
        case 0:
        case 1: return l;
        case 2: return {l.amplitude, l.phase};
        case 3: return {l.phase, static_cast<std::uint8_t>(l.phase ^ l.amplitude)};
        default: throw std::invalid_argument("round symbol not in 0..3");
    }
}

BellDiagonal depolarize(const BellDiagonal& state, double alpha) {
    if (!(alpha >= 0.0 && alpha <= 1.0))
        throw std::invalid_argument("alpha not in [0, 1]");
    BellDiagonal out;
    for (int x = 0; x < 4; ++x) out.p[x] = alpha * state.p[x] + (1.0 - alpha) / 4.0;
    return out;
}

BellDiagonal werner(double f) {
    if (!(f >= 0.25 && f <= 1.0))
        throw std::domain_error("Werner fidelity not in [1/4, 1]");
    double r = (1.0 - f) / 3.0;
    return {{f, r, r, r}};
}

BellDiagonal werner_from_q(double q) {
    if (!(q >= 0.0 && q <= 1.0)) throw std::domain_error("q not in [0, 1]");
    return depolarize(BellDiagonal{}, q);
}

double fidelity_to_q(double f) { return (4.0 * f - 1.0) / 3.0; }

double q_to_fidelity(double q) { return (3.0 * q + 1.0) / 4.0; }

BellDiagonal twirl_to_werner(const BellDiagonal& state) {
    double r = (state.p[1] + state.p[2] + state.p[3]) / 3.0;
    return {{state.p[0], r, r, r}};
}

double shannon_entropy(std::span<const double> p) {
    double s = 0;
    for (double v : p) {
        if (!(v >= 0.0)) throw std::invalid_argument("probability negative or NaN");
        if (v > 0.0) s -= v * std::log2(v);
    }
    return s;
}

double werner_entropy(double f) {
    if (!(f >= 0.0 && f <= 1.0)) throw std::domain_error("fidelity not in [0, 1]");
    double s = 0;
    if (f > 0.0) s -= f * std::log2(f);
    if (f < 1.0) s -= (1.0 - f) * std::log2((1.0 - f) / 3.0);
    return s;
}

}  // namespace enthash
