#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <tuple>

#include "hopps/error.hpp"
#include "hopps/sat.hpp"

namespace hopps::sat {

const char* to_string(SolveStatus s) {
    switch (s) {
    case SolveStatus::Sat: return "SAT";
    case SolveStatus::Unsat: return "UNSAT";
    case SolveStatus::Timeout: return "TIMEOUT";
    }
    return "?";
}

Deadline deadline_after(double seconds) {
    if (!std::isfinite(seconds) || seconds > 1e9) return std::nullopt;
    const auto budget = std::chrono::duration_cast<Clock::duration>(std::chrono::duration<double>(std::max(0.0, seconds)));
    return Clock::now() + budget;
}

int SatInstance::new_var() { return ++num_vars_; }

int SatInstance::new_named_var(const std::string& family, FamilyIndex index) {
    auto& fam = families_[family];
    if (fam.contains(index)) throw std::invalid_argument("variable for family '" + family + "' index already allocated");
    const int v = new_var();
    fam.emplace(std::move(index), v);
    return v;
}

std::optional<int> SatInstance::named_var(const std::string& family, const FamilyIndex& index) const {
    auto f = families_.find(family);
    if (f == families_.end()) return std::nullopt;
    auto it = f->second.find(index);
    if (it == f->second.end()) return std::nullopt;
    return it->second;
}

void SatInstance::add_clause(std::span<const Lit> lits) {
    if (lits.empty()) throw std::invalid_argument("clause must be nonempty");
    for (const Lit l : lits) {
        if (l.var < 1 || l.var > num_vars_) throw std::invalid_argument("clause uses unallocated variable " + std::to_string(l.var));
    }
    clauses_.emplace_back(lits.begin(), lits.end());
}

void SatInstance::add_empty_clause() { clauses_.emplace_back(); }

void at_most_k(SatInstance& inst, std::span<const Lit> lits, std::size_t k) {
    const std::size_t n = lits.size();
    if (k >= n) return;
    if (k == 0) {
        for (const Lit l : lits) inst.add_clause({~l});
        return;
    }
    if (k == 1 && n <= 6) {
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = i + 1; j < n; ++j) inst.add_clause({~lits[i], ~lits[j]});
        }
        return;
    }
    // Sequential counter: s[i][j] <=> at least j+1 of lits[0..i] are true (upper bound only).
    std::vector<std::vector<int>> s(n - 1, std::vector<int>(k));
    for (auto& row : s) {
        for (auto& v : row) v = inst.new_var();
    }
    inst.add_clause({~lits[0], Lit::pos(s[0][0])});
    for (std::size_t j = 1; j < k; ++j) inst.add_clause({Lit::neg(s[0][j])});
    for (std::size_t i = 1; i + 1 < n; ++i) {
        inst.add_clause({~lits[i], Lit::pos(s[i][0])});
        inst.add_clause({Lit::neg(s[i - 1][0]), Lit::pos(s[i][0])});
        for (std::size_t j = 1; j < k; ++j) {
            inst.add_clause({~lits[i], Lit::neg(s[i - 1][j - 1]), Lit::pos(s[i][j])});
            inst.add_clause({Lit::neg(s[i - 1][j]), Lit::pos(s[i][j])});
        }
        inst.add_clause({~lits[i], Lit::neg(s[i - 1][k - 1])});
    }
    inst.add_clause({~lits[n - 1], Lit::neg(s[n - 2][k - 1])});
}

void at_least_k(SatInstance& inst, std::span<const Lit> lits, std::size_t k) {
    if (k == 0) return;
    if (k > lits.size()) {
        inst.add_empty_clause();
        return;
    }
    if (k == 1) {
        inst.add_clause(lits);
        return;
    }
    std::vector<Lit> negated;
    negated.reserve(lits.size());
    for (const Lit l : lits) negated.push_back(~l);
    at_most_k(inst, negated, lits.size() - k);
}

void exactly_one(SatInstance& inst, std::span<const Lit> lits) {
    at_least_k(inst, lits, 1);
    at_most_k(inst, lits, 1);
}

std::string export_dimacs(const SatInstance& inst) {
    std::ostringstream os;
    for (const auto& [family, vars] : inst.families()) {
        for (const auto& [index, var] : vars) {
            os << "c family " << family;
            for (int i : index) os << ' ' << i;
            os << " = " << var << '\n';
        }
    }
    os << "p cnf " << inst.num_vars() << ' ' << inst.clauses().size() << '\n';
    for (const auto& clause : inst.clauses()) {
        for (const Lit l : clause) os << l.dimacs() << ' ';
        os << "0\n";
    }
    return os.str();
}

SatInstance parse_dimacs(std::string_view text) {
    SatInstance inst;
    std::istringstream in{std::string(text)};
    std::string line;
    std::size_t line_no = 0;
    bool have_header = false;
    std::size_t declared_clauses = 0;
    std::vector<std::tuple<std::string, FamilyIndex, int>> named;
    Clause pending;
    while (std::getline(in, line)) {
        ++line_no;
        std::istringstream ls(line);
        std::string tok;
        if (!(ls >> tok)) continue;
        if (tok == "c") {
            std::string kw;
            if (ls >> kw && kw == "family") {
                std::string fam;
                ls >> fam;
                FamilyIndex idx;
                std::string t;
                int var = 0;
                while (ls >> t) {
                    if (t == "=") {
                        ls >> var;
                        break;
                    }
                    idx.push_back(std::stoi(t));
                }
                named.emplace_back(fam, idx, var);
            }
            continue;
        }
        if (tok == "p") {
            std::string fmt;
            int vars = 0;
            if (!(ls >> fmt >> vars >> declared_clauses) || fmt != "cnf") throw ParseError("malformed DIMACS header", line_no, 1);
            have_header = true;
            // Named variables first so their ids line up, then fill the rest.
            std::sort(named.begin(), named.end(), [](const auto& a, const auto& b) { return std::get<2>(a) < std::get<2>(b); });
            std::size_t next = 0;
            for (int v = 1; v <= vars; ++v) {
                if (next < named.size() && std::get<2>(named[next]) == v) {
                    inst.new_named_var(std::get<0>(named[next]), std::get<1>(named[next]));
                    ++next;
                } else {
                    inst.new_var();
                }
            }
            if (next != named.size()) throw ParseError("family comment refers to an undeclared variable", line_no, 1);
            continue;
        }
        if (!have_header) throw ParseError("clause before DIMACS header", line_no, 1);
        ls.clear();
        ls.str(line);
        int x = 0;
        while (ls >> x) {
            if (x == 0) {
                if (pending.empty()) {
                    inst.add_empty_clause();
                } else {
                    try {
                        inst.add_clause(pending);
                    } catch (const std::invalid_argument& e) {
                        throw ParseError(e.what(), line_no, 1);
                    }
                }
                pending.clear();
            } else {
                pending.push_back(x > 0 ? Lit::pos(x) : Lit::neg(-x));
            }
        }
        if (ls.fail() && !ls.eof()) throw ParseError("non-integer token in clause", line_no, 1);
    }
    if (!have_header) throw ParseError("missing DIMACS header");
    if (!pending.empty()) throw ParseError("last clause is not 0-terminated", line_no, 1);
    if (inst.clauses().size() != declared_clauses) throw ParseError("clause count does not match header");
    return inst;
}

SolveResult parse_solver_output(std::string_view text, int num_vars) {
    SolveResult r;
    r.model.values.assign(static_cast<std::size_t>(num_vars) + 1, false);
    bool have_status = false;
    std::istringstream in{std::string(text)};
    std::string line;
    while (std::getline(in, line)) {
        if (line.rfind("s ", 0) == 0) {
            if (line.find("UNSATISFIABLE") != std::string::npos) {
                r.status = SolveStatus::Unsat;
            } else if (line.find("SATISFIABLE") != std::string::npos) {
                r.status = SolveStatus::Sat;
            } else {
                r.status = SolveStatus::Timeout;
            }
            have_status = true;
        } else if (line.rfind("v ", 0) == 0) {
            std::istringstream ls(line.substr(2));
            int x = 0;
            while (ls >> x) {
                if (x > 0 && x <= num_vars) r.model.values[static_cast<std::size_t>(x)] = true;
            }
        }
    }
    if (!have_status) throw Error("external solver produced no status line");
    return r;
}

} // namespace hopps::sat
