#include <array>
#include <atomic>
#include <cstdio>
#include <fstream>

#include <unistd.h>

#include "hopps/error.hpp"
#include "hopps/sat.hpp"

namespace hopps::sat {

SolveResult InternalBackend::solve(const SatInstance& inst, Deadline deadline) {
    solver_.load(inst);
    return solver_.solve(deadline);
}

namespace {

std::string shell_quote(const std::string& s) {
    std::string out = "'";
    for (char c : s) {
        if (c == '\'') {
            out += "'\\''";
        } else {
            out += c;
        }
    }
    return out + "'";
}

std::filesystem::path scratch_file() {
    static std::atomic<unsigned> counter{0};
    const auto name = "hopps-" + std::to_string(::getpid()) + "-" + std::to_string(counter++) + ".cnf";
    return std::filesystem::temp_directory_path() / name;
}

} // namespace

SolveResult ExternalBackend::solve(const SatInstance& inst, Deadline /*deadline*/) {
    const auto path = scratch_file();
    {
        std::ofstream out(path);
        if (!out) throw Error("cannot write scratch CNF '" + path.string() + "'");
        out << export_dimacs(inst);
    }
    const std::string cmd = shell_quote(executable_.string()) + " " + shell_quote(path.string()) + " 2>/dev/null";
    FILE* pipe = ::popen(cmd.c_str(), "r");
    if (pipe == nullptr) {
        std::filesystem::remove(path);
        throw Error("cannot launch external solver '" + executable_.string() + "'");
    }
    std::string output;
    std::array<char, 4096> buf{};
    while (std::fgets(buf.data(), static_cast<int>(buf.size()), pipe) != nullptr) output += buf.data();
    ::pclose(pipe);
    std::error_code ec;
    std::filesystem::remove(path, ec);
    return parse_solver_output(output, inst.num_vars());
}

BackendFactory internal_backend() {
    return [] { return std::make_unique<InternalBackend>(); };
}

BackendFactory external_backend(std::filesystem::path executable) {
    return [exe = std::move(executable)] { return std::make_unique<ExternalBackend>(exe); };
}

BackendFactory backend_from_spec(const std::string& spec) {
    if (spec.empty() || spec == "internal") return internal_backend();
    return external_backend(spec);
}

} // namespace hopps::sat
