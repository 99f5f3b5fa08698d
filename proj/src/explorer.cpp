#include "sgf/explorer.hpp"
#include "sgf/checkers.hpp"
#include "sgf/constructions.hpp"
#include "sgf/errors.hpp"
#include "sgf/solvers.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cctype>
#include <limits>
#include <mutex>
#include <numeric>
#include <ostream>
#include <thread>

namespace sgf {

namespace {
    void guard_order(std::size_t order, std::size_t limit, const char *who)
    {
        if (order > limit)
            throw ResourceError(std::string(who) + ": order " + std::to_string(order) + " exceeds the limit of "
                                + std::to_string(limit));
    }

    auto canonical_token(std::string_view text) -> std::string
    {
        std::string out;
        for (char c : text)
            out.push_back(c == '-' ? '_' : static_cast<char>(std::toupper(static_cast<unsigned char>(c))));
        return out;
    }

    auto sub(const Digraph &d, const VertexSet &subject) -> Digraph { return induced_subdigraph(d, subject).digraph; }

    auto presence(CertificateKind kind, const VertexSet &subject, std::optional<VertexSet> set,
                  std::optional<ValueMap> values) -> Certificate
    {
        return Certificate{kind, subject, std::move(set), std::move(values), 0};
    }

    auto absence(CertificateKind kind, const VertexSet &subject, std::uint64_t nodes) -> Certificate
    {
        return Certificate{kind, subject, std::nullopt, std::nullopt, nodes};
    }

    // Nonempty proper subsets in (cardinality, mask) order.
    auto proper_subsets(std::size_t n) -> std::vector<std::uint64_t>
    {
        std::vector<std::uint64_t> masks;
        std::uint64_t full = (std::uint64_t{1} << n) - 1;
        for (std::uint64_t m = 1; m < full; ++m)
            masks.push_back(m);
        std::stable_sort(masks.begin(), masks.end(),
                         [](auto a, auto b) { return std::popcount(a) < std::popcount(b); });
        return masks;
    }
}

auto digraph_count(std::size_t order, bool include_loops) -> std::uint64_t
{
    auto bits = arc_slots(order, include_loops).size();
    if (bits >= 64)
        throw ResourceError("digraph_count: too many arc slots");
    return std::uint64_t{1} << bits;
}

auto arc_slots(std::size_t order, bool include_loops) -> std::vector<Arc>
{
    std::vector<Arc> slots;
    for (Vertex t = 0; t < order; ++t)
        for (Vertex h = 0; h < order; ++h)
            if (t != h || include_loops)
                slots.push_back({t, h});
    return slots;
}

auto decode_digraph(std::size_t order, std::uint64_t mask, bool include_loops) -> Digraph
{
    auto slots = arc_slots(order, include_loops);
    std::vector<Arc> arcs;
    for (std::size_t k = 0; k < slots.size(); ++k)
        if ((mask >> k) & 1U)
            arcs.push_back(slots[k]);
    return Digraph(order, arcs);
}

CanonicalFilter::CanonicalFilter(std::size_t order, bool include_loops)
{
    guard_order(order, max_enumerated_order, "CanonicalFilter");
    auto slots = arc_slots(order, include_loops);
    auto slot_of = [&](Arc a) {
        return static_cast<std::uint8_t>(std::find(slots.begin(), slots.end(), a) - slots.begin());
    };

    std::vector<Vertex> perm(order);
    std::iota(perm.begin(), perm.end(), 0);
    do {
        std::vector<std::uint8_t> image;
        for (const auto &[t, h] : slots)
            image.push_back(slot_of({perm[t], perm[h]}));
        images_.push_back(std::move(image));
    } while (std::next_permutation(perm.begin(), perm.end()));
}

auto CanonicalFilter::is_canonical(std::uint64_t mask) const -> bool
{
    for (const auto &image : images_) {
        std::uint64_t moved = 0;
        for (auto m = mask; m != 0; m &= m - 1)
            moved |= std::uint64_t{1} << image[static_cast<std::size_t>(std::countr_zero(m))];
        if (moved < mask)
            return false;
    }
    return true;
}

void enumerate_digraphs(std::size_t order, bool include_loops, bool iso_filter,
                        const std::function<bool(const Digraph &, std::uint64_t)> &visit)
{
    guard_order(order, max_enumerated_order, "enumerate_digraphs");
    auto total = digraph_count(order, include_loops);
    std::optional<CanonicalFilter> filter;
    if (iso_filter)
        filter.emplace(order, include_loops);
    for (std::uint64_t mask = 0; mask < total; ++mask) {
        if (filter && ! filter->is_canonical(mask))
            continue;
        if (! visit(decode_digraph(order, mask, include_loops), mask))
            return;
    }
}

auto predicate_name(Predicate p) -> std::string_view
{
    switch (p) {
    case Predicate::semikernel_not_semigrundy: return "SEMIKERNEL_NOT_SEMIGRUNDY";
    case Predicate::semigrundy_not_grundy: return "SEMIGRUNDY_NOT_GRUNDY";
    case Predicate::semigrundy_not_kernel: return "SEMIGRUNDY_NOT_KERNEL";
    case Predicate::semigrundy_not_hereditary: return "SEMIGRUNDY_NOT_HEREDITARY";
    case Predicate::grundy_gap_at_least: return "GRUNDY_GAP_AT_LEAST";
    }
    return "?";
}

auto parse_predicate(std::string_view text) -> std::optional<Predicate>
{
    auto token = canonical_token(text);
    for (auto p : {Predicate::semikernel_not_semigrundy, Predicate::semigrundy_not_grundy,
                   Predicate::semigrundy_not_kernel, Predicate::semigrundy_not_hereditary,
                   Predicate::grundy_gap_at_least})
        if (token == predicate_name(p))
            return p;
    return std::nullopt;
}

auto certificate_kind_name(CertificateKind k) -> std::string_view
{
    switch (k) {
    case CertificateKind::semi_kernel: return "semi-kernel";
    case CertificateKind::semi_grundy: return "semi-grundy";
    case CertificateKind::grundy: return "grundy";
    case CertificateKind::no_kernel: return "no-kernel";
    case CertificateKind::no_grundy: return "no-grundy";
    case CertificateKind::no_semi_grundy: return "no-semi-grundy";
    }
    return "?";
}

auto validate_certificate(const Digraph &d, const Certificate &c) -> bool
{
    if (c.subject.universe() != d.order())
        return false;
    auto part = sub(d, c.subject);
    switch (c.kind) {
    case CertificateKind::semi_kernel: return c.set && c.set->universe() == part.order() && is_semi_kernel(part, *c.set);
    case CertificateKind::semi_grundy: return c.values && c.values->size() == part.order() && is_semi_grundy(part, *c.values);
    case CertificateKind::grundy: return c.values && c.values->size() == part.order() && is_grundy(part, *c.values);
    case CertificateKind::no_kernel: return ! find_kernel(part).found;
    case CertificateKind::no_grundy: return ! find_grundy(part).found;
    case CertificateKind::no_semi_grundy: return ! find_semi_grundy(part).found;
    }
    return false;
}

auto WitnessReport::same_result(const WitnessReport &other) const -> bool
{
    return found == other.found && digraph == other.digraph && arc_mask == other.arc_mask
        && certificates == other.certificates && digraphs_scanned == other.digraphs_scanned;
}

auto evaluate_predicate(const Digraph &d, Predicate p, Value gap) -> std::optional<std::vector<Certificate>>
{
    auto all = d.vertices();
    switch (p) {
    case Predicate::semikernel_not_semigrundy: {
        auto sk = find_semi_kernel(d);
        if (! sk.found)
            return std::nullopt;
        auto sg = find_semi_grundy(d);
        if (sg.found)
            return std::nullopt;
        return std::vector{presence(CertificateKind::semi_kernel, all, sk.witness, std::nullopt),
                           absence(CertificateKind::no_semi_grundy, all, sg.nodes_explored)};
    }
    case Predicate::semigrundy_not_grundy: {
        auto g = find_grundy(d);
        if (g.found)
            return std::nullopt;
        auto sg = find_semi_grundy(d);
        if (! sg.found)
            return std::nullopt;
        return std::vector{presence(CertificateKind::semi_grundy, all, std::nullopt, sg.witness),
                           absence(CertificateKind::no_grundy, all, g.nodes_explored)};
    }
    case Predicate::semigrundy_not_kernel: {
        auto k = find_kernel(d);
        if (k.found)
            return std::nullopt;
        auto sg = find_semi_grundy(d);
        if (! sg.found)
            return std::nullopt;
        return std::vector{presence(CertificateKind::semi_grundy, all, std::nullopt, sg.witness),
                           absence(CertificateKind::no_kernel, all, k.nodes_explored)};
    }
    case Predicate::semigrundy_not_hereditary: {
        auto sg = find_semi_grundy(d);
        if (! sg.found)
            return std::nullopt;
        for (auto mask : proper_subsets(d.order())) {
            auto subject = VertexSet::from_mask(d.order(), mask);
            auto part = find_semi_grundy(sub(d, subject));
            if (! part.found)
                return std::vector{presence(CertificateKind::semi_grundy, all, std::nullopt, sg.witness),
                                   absence(CertificateKind::no_semi_grundy, subject, part.nodes_explored)};
        }
        return std::nullopt;
    }
    case Predicate::grundy_gap_at_least: {
        auto functions = enumerate_grundy(d);
        if (functions.empty())
            return std::nullopt;
        auto by_max = [](const ValueMap &a, const ValueMap &b) { return a.max_value() < b.max_value(); };
        // First occurrences in lexicographic order keep the choice deterministic.
        auto lo = std::min_element(functions.begin(), functions.end(), by_max);
        auto hi = std::max_element(functions.begin(), functions.end(), by_max);
        if (hi->max_value() - lo->max_value() < gap)
            return std::nullopt;
        return std::vector{presence(CertificateKind::grundy, all, std::nullopt, *hi),
                           presence(CertificateKind::grundy, all, std::nullopt, *lo)};
    }
    }
    return std::nullopt;
}

auto find_witness(const SearchSpec &spec, std::ostream *progress) -> WitnessReport
{
    guard_order(spec.max_order, max_enumerated_order, "find_witness");
    if (spec.workers == 0)
        throw InputError("find_witness: at least one worker is required");

    auto start = std::chrono::steady_clock::now();
    WitnessReport report;

    for (std::size_t order = 1; order <= spec.max_order && ! report.found; ++order) {
        auto total = digraph_count(order, spec.include_loops);
        std::uint64_t chunk = std::max<std::uint64_t>(1024, total / 65536);
        std::uint64_t chunks = (total + chunk - 1) / chunk;

        std::optional<CanonicalFilter> filter;
        if (spec.iso_filter)
            filter.emplace(order, spec.include_loops);

        struct ChunkResult {
            std::uint64_t scanned = 0;
            std::optional<std::uint64_t> mask;
            std::vector<Certificate> certificates;
        };
        std::vector<ChunkResult> results(chunks);
        std::atomic<std::uint64_t> next{0};
        std::atomic<std::uint64_t> best{std::numeric_limits<std::uint64_t>::max()};
        std::exception_ptr failure;
        std::mutex failure_lock;

        auto work = [&] {
            try {
                for (;;) {
                    auto c = next.fetch_add(1);
                    if (c >= chunks || c > best.load())
                        return;
                    auto &r = results[c];
                    auto end = std::min(total, (c + 1) * chunk);
                    for (auto mask = c * chunk; mask < end; ++mask) {
                        if (filter && ! filter->is_canonical(mask))
                            continue;
                        ++r.scanned;
                        auto d = decode_digraph(order, mask, spec.include_loops);
                        if (auto certs = evaluate_predicate(d, spec.predicate, spec.gap)) {
                            r.mask = mask;
                            r.certificates = std::move(*certs);
                            auto seen = best.load();
                            while (c < seen && ! best.compare_exchange_weak(seen, c)) {
                            }
                            break;
                        }
                    }
                }
            }
            catch (...) {
                std::lock_guard lock(failure_lock);
                failure = std::current_exception();
                best.store(0);
            }
        };

        std::vector<std::jthread> pool;
        for (unsigned w = 1; w < spec.workers; ++w)
            pool.emplace_back(work);
        work();
        pool.clear();
        if (failure)
            std::rethrow_exception(failure);

        auto winner = best.load();
        // Every chunk below the winner was claimed before it and fully scanned.
        auto last = std::min(winner, chunks - 1);
        for (std::uint64_t c = 0; c <= last; ++c)
            report.digraphs_scanned += results[c].scanned;
        if (winner < chunks) {
            auto &r = results[winner];
            report.found = true;
            report.arc_mask = *r.mask;
            report.digraph = decode_digraph(order, *r.mask, spec.include_loops);
            report.certificates = std::move(r.certificates);
        }
        if (progress)
            *progress << "explore: order " << order << " done, " << report.digraphs_scanned << " digraphs scanned"
                      << (report.found ? ", witness found" : "") << '\n';
    }

    report.wall_time = std::chrono::steady_clock::now() - start;
    return report;
}

auto theorem_name(Theorem t) -> std::string_view
{
    switch (t) {
    case Theorem::hereditary_sk_implies_kernel: return "T1_HEREDITARY_SK_IMPLIES_KERNEL";
    case Theorem::grundy_zero_is_kernel: return "T2_GRUNDY_ZERO_IS_KERNEL";
    case Theorem::kp_implies_grundy: return "T3_KP_IMPLIES_GRUNDY";
    case Theorem::sg_implies_sk: return "LEMMA_SG_IMPLIES_SK";
    case Theorem::hereditary_sk_implies_sg: return "PROP_HEREDITARY_SK_IMPLIES_SG";
    }
    return "?";
}

auto parse_theorem(std::string_view text) -> std::optional<Theorem>
{
    auto token = canonical_token(text);
    for (auto t : {Theorem::hereditary_sk_implies_kernel, Theorem::grundy_zero_is_kernel, Theorem::kp_implies_grundy,
                   Theorem::sg_implies_sk, Theorem::hereditary_sk_implies_sg}) {
        auto name = theorem_name(t);
        if (token == name || token == name.substr(0, name.find('_')))
            return t;
    }
    return std::nullopt;
}

auto verify_theorem(Theorem t, std::size_t max_order) -> TheoremReport
{
    guard_order(max_order, max_verified_order, "verify_theorem");
    TheoremReport report;
    report.theorem = t;

    // Returns {premise holds, conclusion holds}.
    auto check = [t](const Digraph &d) -> std::pair<bool, bool> {
        switch (t) {
        case Theorem::hereditary_sk_implies_kernel:
            if (! has_hereditary_semi_kernel(d))
                return {false, true};
            return {true, find_kernel(d).found};
        case Theorem::grundy_zero_is_kernel: {
            auto all = enumerate_grundy(d);
            bool ok = std::all_of(all.begin(), all.end(),
                                  [&](const ValueMap &g) { return is_kernel(d, g.preimage(0)); });
            return {! all.empty(), ok};
        }
        case Theorem::kp_implies_grundy:
            if (! is_kernel_perfect(d))
                return {false, true};
            return {true, find_grundy(d).found};
        case Theorem::sg_implies_sk: {
            auto sg = find_semi_grundy(d);
            if (! sg.found)
                return {false, true};
            auto s = *sg.witness;
            return {true, is_semi_kernel(d, s.preimage(s.min_value())) && find_semi_kernel(d).found};
        }
        case Theorem::hereditary_sk_implies_sg:
            if (! has_hereditary_semi_kernel(d))
                return {false, true};
            return {true, find_semi_grundy(d).found && layered_semi_grundy(d).ok};
        }
        return {false, true};
    };

    for (std::size_t order = 1; order <= max_order && report.holds; ++order)
        enumerate_digraphs(order, false, false, [&](const Digraph &d, std::uint64_t) {
            ++report.digraphs_checked;
            auto [premise, conclusion] = check(d);
            if (premise)
                ++report.premise_satisfied;
            if (! conclusion) {
                report.holds = false;
                report.counterexample = d;
                return false;
            }
            return true;
        });
    return report;
}

} // namespace sgf
