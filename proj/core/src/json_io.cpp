#include "hopps/json_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "hopps/error.hpp"

namespace hopps {

using nlohmann::json;

namespace {

json matrix_json(const ParityMatrix& m) { return m.to_bits(); }

std::vector<std::vector<int>> bits_of(const json& j, const char* what) {
    if (!j.is_array()) throw ParseError(std::string("'") + what + "' must be an array of bit rows");
    return j.get<std::vector<std::vector<int>>>();
}

json parse_or_throw(std::string_view text) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what());
    }
}

} // namespace

std::string rep_to_json(const PhasePolyRep& rep, int indent) {
    json j;
    j["n"] = rep.num_qubits();
    j["initial"] = matrix_json(rep.initial);
    j["final"] = matrix_json(rep.final);
    json terms = json::array();
    json angles = json::array();
    for (std::size_t i = 0; i < rep.table.size(); ++i) {
        terms.push_back(rep.table.terms()[i].to_bits());
        const Angle& a = rep.table.angles()[i];
        if (a.is_symbolic()) {
            angles.push_back(a.to_string());
        } else {
            angles.push_back(a.constant());
        }
    }
    j["terms"] = std::move(terms);
    j["angles"] = std::move(angles);
    return j.dump(indent);
}

PhasePolyRep rep_from_json(std::string_view text) {
    const json j = parse_or_throw(text);
    try {
        const std::size_t n = j.at("n").get<std::size_t>();
        ParityMatrix initial = j.contains("initial") ? ParityMatrix::from_bits(bits_of(j["initial"], "initial"))
                                                     : ParityMatrix::identity(n);
        ParityMatrix final = ParityMatrix::from_bits(bits_of(j.at("final"), "final"));
        const auto terms = bits_of(j.at("terms"), "terms");
        const json& angles = j.at("angles");
        if (!angles.is_array() || angles.size() != terms.size()) {
            throw ParseError("'angles' must be an array with one entry per term");
        }
        ParityTable table(n);
        for (std::size_t i = 0; i < terms.size(); ++i) {
            Angle a = angles[i].is_string() ? Angle::parse(angles[i].get<std::string>()) : Angle(angles[i].get<double>());
            table.add(BitVector::from_bits(terms[i]), std::move(a));
        }
        PhasePolyRep rep{std::move(initial), std::move(final), std::move(table)};
        rep.validate();
        if (rep.num_qubits() != n) throw ValidationError("'n' does not match matrix size");
        return rep;
    } catch (const json::exception& e) {
        throw ParseError(std::string("malformed phase-polynomial JSON: ") + e.what());
    } catch (const std::invalid_argument& e) {
        throw ValidationError(e.what());
    }
}

std::string coupling_map_to_json(const CouplingMap& cm, int indent) {
    json j;
    j["num_qubits"] = cm.num_qubits();
    json edges = json::array();
    for (auto [a, b] : cm.edges()) edges.push_back({a, b});
    j["edges"] = std::move(edges);
    return j.dump(indent);
}

CouplingMap coupling_map_from_json(std::string_view text) {
    const json j = parse_or_throw(text);
    try {
        const auto n = j.at("num_qubits").get<std::size_t>();
        std::vector<std::pair<Qubit, Qubit>> edges;
        for (const auto& e : j.at("edges")) {
            if (!e.is_array() || e.size() != 2) throw ParseError("each edge must be a pair [i, j]");
            edges.emplace_back(e[0].get<Qubit>(), e[1].get<Qubit>());
        }
        return {n, edges};
    } catch (const json::exception& e) {
        throw ParseError(std::string("malformed coupling-map JSON: ") + e.what());
    }
}

std::string read_text_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open '" + path.string() + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text_file(const std::filesystem::path& path, std::string_view text) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write '" + path.string() + "'");
    out << text;
}

} // namespace hopps
