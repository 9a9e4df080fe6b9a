#pragma once

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <initializer_list>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace hopps::sat {

/// Literal over a 1-based variable id.
struct Lit {
    int var = 0;
    bool negated = false;

    static constexpr Lit pos(int v) { return {v, false}; }
    static constexpr Lit neg(int v) { return {v, true}; }
    constexpr Lit operator~() const { return {var, !negated}; }
    /// DIMACS integer form: +var or -var.
    [[nodiscard]] constexpr int dimacs() const { return negated ? -var : var; }
    friend constexpr bool operator==(Lit, Lit) = default;
};

using Clause = std::vector<Lit>;
using FamilyIndex = std::vector<int>;

/// CNF under construction. Clauses are only ever appended.
///
/// Named families ("cnot", "P", "D", "L", ...) map an index tuple to the variable that
/// encodes it; each tuple owns exactly one variable.
class SatInstance {
public:
    int new_var();
    /// Throws std::invalid_argument if (family, index) already has a variable.
    int new_named_var(const std::string& family, FamilyIndex index);
    [[nodiscard]] std::optional<int> named_var(const std::string& family, const FamilyIndex& index) const;

    /// Throws std::invalid_argument for an empty clause or an unallocated variable.
    void add_clause(std::span<const Lit> lits);
    void add_clause(std::initializer_list<Lit> lits) { add_clause(std::span<const Lit>(lits.begin(), lits.size())); }
    /// Records the empty clause; the instance becomes trivially unsatisfiable.
    void add_empty_clause();

    [[nodiscard]] int num_vars() const noexcept { return num_vars_; }
    [[nodiscard]] const std::vector<Clause>& clauses() const noexcept { return clauses_; }
    [[nodiscard]] const std::map<std::string, std::map<FamilyIndex, int>>& families() const noexcept { return families_; }

private:
    int num_vars_ = 0;
    std::vector<Clause> clauses_;
    std::map<std::string, std::map<FamilyIndex, int>> families_;
};

/// Total assignment; index 0 is unused so `values[var]` reads naturally.
struct SatModel {
    std::vector<bool> values;
    [[nodiscard]] bool value(int var) const { return values.at(static_cast<std::size_t>(var)); }
    [[nodiscard]] bool value(Lit l) const { return value(l.var) != l.negated; }
};

enum class SolveStatus { Sat, Unsat, Timeout };
[[nodiscard]] const char* to_string(SolveStatus s);

struct SolveResult {
    SolveStatus status = SolveStatus::Unsat;
    SatModel model;
    [[nodiscard]] bool sat() const noexcept { return status == SolveStatus::Sat; }
};

using Clock = std::chrono::steady_clock;
using Deadline = std::optional<Clock::time_point>;

/// Deadline `seconds` from now; non-finite or huge budgets mean no deadline.
[[nodiscard]] Deadline deadline_after(double seconds);

// Cardinality constraints over `lits`.
//
// at_most_k: nothing when k >= |lits|; unit negations when k == 0; the pairwise
// encoding when k == 1 and |lits| <= 6; otherwise a sequential counter with auxiliary
// variables.
void at_most_k(SatInstance& inst, std::span<const Lit> lits, std::size_t k);
// at_least_k: nothing when k == 0; a single clause when k == 1; otherwise at_most over
// the negated literals. k > |lits| records the empty clause.
void at_least_k(SatInstance& inst, std::span<const Lit> lits, std::size_t k);
void exactly_one(SatInstance& inst, std::span<const Lit> lits);

/// Conflict-driven clause-learning solver with two watched literals, VSIDS, phase
/// saving and Luby restarts. Deterministic for a fixed clause order.
///
/// Incremental: `load` picks up variables and clauses appended to the instance since
/// the previous call; learned clauses are kept because clauses are never retracted.
class CdclSolver {
public:
    CdclSolver();
    ~CdclSolver();
    CdclSolver(CdclSolver&&) noexcept;
    CdclSolver& operator=(CdclSolver&&) noexcept;

    void load(const SatInstance& inst);
    SolveResult solve(Deadline deadline = std::nullopt);

    struct Stats {
        std::uint64_t decisions = 0;
        std::uint64_t conflicts = 0;
        std::uint64_t propagations = 0;
        std::uint64_t restarts = 0;
    };
    [[nodiscard]] const Stats& stats() const noexcept;

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

/// One-shot solve with the internal solver.
[[nodiscard]] SolveResult solve(const SatInstance& inst, Deadline deadline = std::nullopt);

/// Anything that honors solve()'s contract on a growing instance.
class Backend {
public:
    virtual ~Backend() = default;
    virtual SolveResult solve(const SatInstance& inst, Deadline deadline) = 0;
};

class InternalBackend final : public Backend {
public:
    SolveResult solve(const SatInstance& inst, Deadline deadline) override;

private:
    CdclSolver solver_;
};

/// Runs `<executable> <file.cnf>` and reads "s SATISFIABLE" / "s UNSATISFIABLE" plus
/// "v ..." value lines from its stdout. The deadline is not enforced on the child.
class ExternalBackend final : public Backend {
public:
    explicit ExternalBackend(std::filesystem::path executable) : executable_(std::move(executable)) {}
    SolveResult solve(const SatInstance& inst, Deadline deadline) override;

private:
    std::filesystem::path executable_;
};

using BackendFactory = std::function<std::unique_ptr<Backend>()>;

[[nodiscard]] BackendFactory internal_backend();
[[nodiscard]] BackendFactory external_backend(std::filesystem::path executable);
/// "internal" (or empty) selects the internal solver; anything else is an executable path.
[[nodiscard]] BackendFactory backend_from_spec(const std::string& spec);

/// DIMACS CNF: family comment block, "p cnf V C", one 0-terminated clause per line.
[[nodiscard]] std::string export_dimacs(const SatInstance& inst);
/// Reads clauses and `c family` comments back; throws ParseError on malformed input.
[[nodiscard]] SatInstance parse_dimacs(std::string_view text);
/// Parses a competition-format solver transcript.
[[nodiscard]] SolveResult parse_solver_output(std::string_view text, int num_vars);

} // namespace hopps::sat
