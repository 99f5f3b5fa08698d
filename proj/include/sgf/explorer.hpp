#pragma once

#include "sgf/digraph.hpp"

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace sgf {

/// Largest order the enumerator accepts.
inline constexpr std::size_t max_enumerated_order = 7;
/// Largest order verify_theorem accepts.
inline constexpr std::size_t max_verified_order = 5;

/// Number of labeled digraphs on `order` vertices: 2^(n(n-1)), or 2^(n^2) with loops.
auto digraph_count(std::size_t order, bool include_loops) -> std::uint64_t;

/// Bit k of an arc mask stands for arc_slots(order, loops)[k]; slots are in (tail, head)
/// order.
auto arc_slots(std::size_t order, bool include_loops) -> std::vector<Arc>;
auto decode_digraph(std::size_t order, std::uint64_t mask, bool include_loops) -> Digraph;

/// Keeps the orbit-minimal arc mask of each isomorphism class, by trying every vertex
/// permutation.
class CanonicalFilter {
public:
    CanonicalFilter(std::size_t order, bool include_loops);

    auto is_canonical(std::uint64_t mask) const -> bool;

private:
    // images_[p][k] is the bit that slot k moves to under permutation p.
    std::vector<std::vector<std::uint8_t>> images_;
};

/// Calls `visit(digraph, mask)` on every labeled digraph of the given order in increasing
/// mask order (only orbit-minimal ones when `iso_filter`), until it returns false.
/// Throws ResourceError above max_enumerated_order.
void enumerate_digraphs(std::size_t order, bool include_loops, bool iso_filter,
                        const std::function<bool(const Digraph &, std::uint64_t)> &visit);

enum class Predicate {
    semikernel_not_semigrundy,
    semigrundy_not_grundy,
    semigrundy_not_kernel,
    semigrundy_not_hereditary,
    grundy_gap_at_least,
};

auto predicate_name(Predicate p) -> std::string_view;
/// Accepts the names printed by predicate_name, case-insensitively, with '-' or '_'.
auto parse_predicate(std::string_view text) -> std::optional<Predicate>;

struct SearchSpec {
    Predicate predicate = Predicate::semigrundy_not_grundy;
    Value gap = 1; ///< threshold for grundy_gap_at_least
    std::size_t max_order = 4;
    bool include_loops = false;
    unsigned workers = 1;
    bool iso_filter = false;
};

enum class CertificateKind {
    semi_kernel,    ///< `set` is a semi-kernel of D[subject]
    semi_grundy,    ///< `values` is semi-Grundy on D[subject]
    grundy,         ///< `values` is Grundy on D[subject]
    no_kernel,      ///< exhaustive kernel search on D[subject] failed
    no_grundy,      ///< exhaustive Grundy search on D[subject] failed
    no_semi_grundy, ///< exhaustive semi-Grundy search on D[subject] failed
};

auto certificate_kind_name(CertificateKind k) -> std::string_view;

/// One checkable fact about a witness digraph. Presence facts carry the object; absence
/// facts carry the solver's node count as an exhaustion token.
struct Certificate {
    CertificateKind kind = CertificateKind::semi_kernel;
    VertexSet subject;
    std::optional<VertexSet> set;
    std::optional<ValueMap> values;
    std::uint64_t nodes_explored = 0;

    friend auto operator==(const Certificate &, const Certificate &) -> bool = default;
};

/// Re-checks a certificate from scratch: checkers for presence, solvers for absence.
auto validate_certificate(const Digraph &d, const Certificate &c) -> bool;

struct WitnessReport {
    bool found = false;
    std::optional<Digraph> digraph;
    std::uint64_t arc_mask = 0;
    std::vector<Certificate> certificates;
    /// Digraphs examined in serial scan order up to and including the witness, or the
    /// whole enumeration when nothing was found.
    std::uint64_t digraphs_scanned = 0;
    std::chrono::duration<double> wall_time{};

    /// Equality of everything except wall_time.
    auto same_result(const WitnessReport &other) const -> bool;
};

/// Scans orders 1..max_order in increasing mask order and returns the first digraph
/// satisfying the predicate. Workers split each order into contiguous mask ranges; the least
/// witness wins, so the report does not depend on the worker count.
auto find_witness(const SearchSpec &spec, std::ostream *progress = nullptr) -> WitnessReport;

/// Certificates for `d` if it satisfies the predicate.
auto evaluate_predicate(const Digraph &d, Predicate p, Value gap = 1) -> std::optional<std::vector<Certificate>>;

enum class Theorem {
    hereditary_sk_implies_kernel,
    grundy_zero_is_kernel,
    kp_implies_grundy,
    sg_implies_sk,
    hereditary_sk_implies_sg,
};

auto theorem_name(Theorem t) -> std::string_view;
auto parse_theorem(std::string_view text) -> std::optional<Theorem>;

struct TheoremReport {
    Theorem theorem = Theorem::grundy_zero_is_kernel;
    bool holds = true;
    std::uint64_t digraphs_checked = 0;
    std::uint64_t premise_satisfied = 0;
    std::optional<Digraph> counterexample;
};

/// Checks the implication on every loop-free labeled digraph of order 1..max_order.
/// Throws ResourceError above max_verified_order.
auto verify_theorem(Theorem t, std::size_t max_order) -> TheoremReport;

} // namespace sgf
