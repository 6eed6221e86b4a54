#include "dmop/core.hpp"

#include <algorithm>
#include <cmath>

namespace dmop {

Bounds::Bounds(std::vector<double> lo, std::vector<double> hi)
    : lower(std::move(lo)), upper(std::move(hi)) {
    if (lower.size() != upper.size())
        throw std::invalid_argument("Bounds: lower/upper dimension mismatch");
    for (std::size_t i = 0; i < lower.size(); ++i)
        if (lower[i] > upper[i])
            throw std::invalid_argument("Bounds: lower > upper at index " + std::to_string(i));
}

Bounds Bounds::uniform(std::size_t n, double lo, double hi) {
    return Bounds(std::vector<double>(n, lo), std::vector<double>(n, hi));
}

bool Bounds::contains(const DecisionVector& x) const {
    if (x.size() != lower.size()) return false;
    for (std::size_t i = 0; i < x.size(); ++i)
        if (x[i] < lower[i] || x[i] > upper[i]) return false;
    return true;
}

DecisionVector Bounds::center() const {
    DecisionVector c(lower.size());
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = center(i);
    return c;
}

long TimeModel::step_index(long tau) const {
    if (tau < 0) throw std::invalid_argument("TimeModel: tau must be non-negative");
    if (tau_T < 1) throw std::invalid_argument("TimeModel: tau_T must be >= 1");
    return tau / tau_T;
}

double TimeModel::time_of(long tau) const {
    return t0 + static_cast<double>(step_index(tau)) * time_step;
}

long TimeModel::step_of_time(double t) const {
    return static_cast<long>(std::floor((t - t0) / time_step + 1e-9));
}

double Environment::get(const std::string& key, double fallback) const {
    auto it = params.find(key);
    return it == params.end() ? fallback : it->second;
}

Environment Environment::with(const std::string& key, double value) const {
    Environment next = *this;
    next.params[key] = value;
    return next;
}

namespace {

// splitmix64; the underlying generator for every stream.
std::uint64_t mix64(std::uint64_t& s) {
    std::uint64_t z = (s += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

std::uint64_t fnv1a(std::string_view s) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (char c : s) {
        h ^= static_cast<unsigned char>(c);
        h *= 0x100000001b3ULL;
    }
    return h;
}

} // namespace

Rng::Rng(std::uint64_t seed) : state_(seed) {
    // Warm up once so seed 0 does not emit 0 first.
    (void)mix64(state_);
}

Rng Rng::derive(std::uint64_t seed, std::string_view label) {
    std::uint64_t s = seed ^ fnv1a(label);
    return Rng(mix64(s));
}

Rng Rng::derive(std::uint64_t seed, std::string_view label, std::uint64_t index) {
    std::uint64_t s = seed ^ fnv1a(label);
    s = mix64(s) + index * 0x9e3779b97f4a7c15ULL;
    return Rng(mix64(s));
}

std::uint64_t Rng::next_u64() { return mix64(state_); }

double Rng::uniform() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double Rng::uniform(double a, double b) { return a + (b - a) * uniform(); }

long Rng::uniform_int(long lo, long hi) {
    if (lo > hi) throw std::invalid_argument("Rng::uniform_int: empty range");
    std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<long>(next_u64() % span);
}

double Rng::gaussian() {
    // Box-Muller, no cached spare (keeps the stream a pure function of
    // the draw count).
    double u1 = uniform();
    double u2 = uniform();
    if (u1 <= 0.0) u1 = 0x1.0p-53;
    constexpr double two_pi = 6.283185307179586476925286766559;
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(two_pi * u2);
}

double Rng::gaussian(double mean, double sigma) { return mean + sigma * gaussian(); }

double time_of(long tau, const TimeModel& model) { return model.time_of(tau); }

DecisionVector clamp_to_bounds(const DecisionVector& x, const Bounds& b) {
    if (x.size() != b.dimension())
        throw std::invalid_argument("clamp_to_bounds: dimension mismatch");
    DecisionVector out(x.size());
    for (std::size_t i = 0; i < x.size(); ++i)
        out[i] = std::clamp(x[i], b.lower[i], b.upper[i]);
    return out;
}

} // namespace dmop
