#include "thetasieve/membership.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <stdexcept>
#include <thread>

namespace thetasieve {

MembershipResult chi_B(u64 n, const ThetaSpec& spec)
{
    if (n == 0) {
        throw std::invalid_argument("chi_B: n must be positive");
    }
    u64 prefix = 1;
    u64 top = 1;
    std::size_t j = 0;
    for (const auto& [p, e] : factorize(n)) {
        const ChainBound bound = theta_eval(spec, prefix, top);
        if (!bound.admits(p)) {
            return {false, ChainViolation{j, p, bound}};
        }
        for (unsigned i = 0; i < e; ++i) {
            prefix *= p;
        }
        top = p;
        ++j;
    }
    return {};
}

MembershipResult chi_D(u64 n, const ThetaSpec& spec)
{
    if (n == 0) {
        throw std::invalid_argument("chi_D: n must be positive");
    }
    const auto d = divisors(n);
    for (std::size_t j = 0; j + 1 < d.size(); ++j) {
        const ChainBound bound = theta_eval(spec, d[j]);
        if (!bound.admits(d[j + 1])) {
            return {false, ChainViolation{j + 1, d[j + 1], bound}};
        }
    }
    return {};
}

namespace {

u64 checked_floor(double x)
{
    if (!(x <= kMaxCountArgument)) {
        throw std::invalid_argument("argument exceeds 2^53");
    }
    return x < 1.0 ? 0 : static_cast<u64>(std::floor(x));
}

// Primes that can occur as a child prime anywhere below x: at the root
// p <= min(theta(1), x), elsewhere p <= x/n <= x/2.
std::vector<std::uint32_t> child_primes(u64 x, const ChainBound& root)
{
    return primes_up_to(std::max(root.cap(x), x / 2));
}

class Walker {
public:
    Walker(u64 x, const ThetaSpec& spec, std::span<const std::uint32_t> primes)
        : x_(x), spec_(spec), primes_(primes)
    {
    }

    // Visits every descendant of `start` (not `start` itself).
    template <class Visit>
    void walk(const BTreeNode& start, std::size_t first_prime, Visit&& visit)
    {
        stack_.clear();
        push_if_fertile(start.n, start.theta_n, first_prime);
        while (!stack_.empty()) {
            Frame& f = stack_.back();
            if (f.pk != 0) {
                const u64 p = primes_[f.idx];
                if (f.pk <= (x_ / f.n) / p) {
                    f.pk *= p;
                } else {
                    ++f.idx;
                    f.pk = 0;
                    continue;
                }
            } else {
                if (f.idx >= primes_.size() || primes_[f.idx] > f.limit) {
                    stack_.pop_back();
                    continue;
                }
                f.pk = primes_[f.idx];
            }
            const u64 p = primes_[f.idx];
            const u64 child = f.n * f.pk;
            const std::size_t next_idx = f.idx + 1;
            const BTreeNode node{child, p, theta_eval(spec_, child, p)};
            visit(node);
            push_if_fertile(child, node.theta_n, next_idx);  // may invalidate f
        }
    }

    // Children of the root, as (node, index of the next admissible prime).
    std::vector<std::pair<BTreeNode, std::size_t>> first_level(const BTreeNode& root)
    {
        std::vector<std::pair<BTreeNode, std::size_t>> out;
        const u64 limit = root.theta_n.cap(x_);
        for (std::size_t i = 0; i < primes_.size() && primes_[i] <= limit; ++i) {
            const u64 p = primes_[i];
            for (u64 pk = p;; pk *= p) {
                out.push_back({BTreeNode{pk, p, theta_eval(spec_, pk, p)}, i + 1});
                if (pk > x_ / p) {
                    break;
                }
            }
        }
        return out;
    }

private:
    struct Frame {
        u64 n;
        u64 limit;  // min(theta(n), x/n)
        std::size_t idx;
        u64 pk;  // current prime power, 0 before the first
    };

    void push_if_fertile(u64 n, const ChainBound& theta_n, std::size_t idx)
    {
        const u64 limit = theta_n.cap(x_ / n);
        if (idx < primes_.size() && primes_[idx] <= limit) {
            stack_.push_back({n, limit, idx, 0});
        }
    }

    u64 x_;
    const ThetaSpec& spec_;
    std::span<const std::uint32_t> primes_;
    std::vector<Frame> stack_;
};

} // namespace

void enumerate_B(double x, const ThetaSpec& spec, const std::function<void(const BTreeNode&)>& visit)
{
    const u64 xi = checked_floor(x);
    if (xi == 0) {
        return;
    }
    const BTreeNode root{1, 1, theta_eval(spec, 1)};
    visit(root);
    const auto primes = child_primes(xi, root.theta_n);
    Walker walker(xi, spec, primes);
    walker.walk(root, 0, visit);
}

std::vector<u64> enumerate_B(double x, const ThetaSpec& spec)
{
    std::vector<u64> out;
    enumerate_B(x, spec, [&](const BTreeNode& node) { out.push_back(node.n); });
    return out;
}

u64 count_B(double x, const ThetaSpec& spec, unsigned threads)
{
    const u64 xi = checked_floor(x);
    if (xi == 0) {
        return 0;
    }
    const BTreeNode root{1, 1, theta_eval(spec, 1)};
    const auto primes = child_primes(xi, root.theta_n);
    if (threads <= 1) {
        u64 count = 1;
        Walker walker(xi, spec, primes);
        walker.walk(root, 0, [&](const BTreeNode&) { ++count; });
        return count;
    }

    const auto tops = Walker(xi, spec, primes).first_level(root);
    std::atomic<std::size_t> next{0};
    std::vector<u64> partial(threads, 0);
    {
        std::vector<std::jthread> pool;
        for (unsigned t = 0; t < threads; ++t) {
            pool.emplace_back([&, t] {
                Walker walker(xi, spec, primes);
                u64 local = 0;
                for (std::size_t i = next++; i < tops.size(); i = next++) {
                    ++local;
                    walker.walk(tops[i].first, tops[i].second, [&](const BTreeNode&) { ++local; });
                }
                partial[t] = local;
            });
        }
    }
    u64 count = 1;
    for (u64 c : partial) {
        count += c;
    }
    return count;
}

u64 count_D(double x, const ThetaSpec& spec)
{
    const u64 xi = checked_floor(x);
    u64 count = 0;
    for (u64 n = 1; n <= xi; ++n) {
        count += chi_D(n, spec).member ? 1 : 0;
    }
    return count;
}

IdentityReport verify_identity(double x, const ThetaSpec& spec)
{
    IdentityReport report;
    report.floor_x = checked_floor(x);
    if (report.floor_x == 0) {
        report.holds = true;
        return report;
    }
    const u64 xi = report.floor_x;
    const ThetaSpec normalized = normalize(spec);
    std::vector<std::pair<u64, u64>> terms;
    enumerate_B(x, normalized, [&](const BTreeNode& node) {
        const u64 quotient = xi / node.n;
        const u64 phi = phi_count_int(quotient, node.theta_n.cap(quotient));
        report.sum += phi;
        ++report.terms;
        terms.emplace_back(node.n, phi);
    });
    report.holds = report.sum == xi;
    constexpr std::size_t kKeep = 8;
    const auto keep = std::min(kKeep, terms.size());
    std::partial_sort(terms.begin(), terms.begin() + static_cast<std::ptrdiff_t>(keep), terms.end(),
                      [](const auto& a, const auto& b) { return a.second > b.second; });
    terms.resize(keep);
    report.largest_terms = std::move(terms);
    return report;
}

} // namespace thetasieve
