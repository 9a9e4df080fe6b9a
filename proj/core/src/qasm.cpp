#include "hopps/qasm.hpp"

#include <cctype>
#include <fstream>
#include <map>
#include <sstream>

#include "hopps/error.hpp"

namespace hopps {

namespace {

struct Statement {
    std::string text;
    std::size_t line = 1;
    std::size_t column = 1;
};

std::string trim(std::string_view s) {
    std::size_t b = 0;
    std::size_t e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return std::string(s.substr(b, e - b));
}

// Splits on ';' outside braces, dropping // comments. `gate ... { ... }` bodies are kept
// inside a single statement so they can be skipped wholesale.
std::vector<Statement> split_statements(std::string_view text) {
    std::vector<Statement> out;
    Statement cur;
    bool started = false;
    int brace_depth = 0;
    std::size_t line = 1;
    std::size_t col = 1;
    for (std::size_t i = 0; i < text.size(); ++i) {
        const char c = text[i];
        if (c == '/' && i + 1 < text.size() && text[i + 1] == '/') {
            while (i < text.size() && text[i] != '\n') ++i;
            if (i < text.size()) {
                ++line;
                col = 1;
                if (started) cur.text += ' ';
            }
            continue;
        }
        if (!started && !std::isspace(static_cast<unsigned char>(c))) {
            started = true;
            cur.line = line;
            cur.column = col;
        }
        if (c == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
        if (!started) continue;
        if (c == '{') ++brace_depth;
        if (c == '}') {
            --brace_depth;
            if (brace_depth == 0) {
                cur.text += c;
                out.push_back(cur);
                cur = Statement{};
                started = false;
                continue;
            }
        }
        if (c == ';' && brace_depth == 0) {
            out.push_back(cur);
            cur = Statement{};
            started = false;
            continue;
        }
        cur.text += c;
    }
    if (started && !trim(cur.text).empty()) {
        throw ParseError("statement is missing a terminating ';'", cur.line, cur.column);
    }
    return out;
}

struct Register {
    std::size_t offset = 0;
    std::size_t size = 0;
};

class Parser {
public:
    Circuit run(std::string_view text) {
        const auto statements = split_statements(text);
        // First pass: registers fix the qubit count before gates are appended.
        for (const auto& st : statements) {
            current_ = &st;
            const std::string body = trim(st.text);
            if (body.rfind("qreg", 0) == 0) declare(body.substr(4), qregs_, num_qubits_);
        }
        Circuit c(num_qubits_);
        for (const auto& st : statements) {
            current_ = &st;
            handle(trim(st.text), c);
        }
        return c;
    }

private:
    [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, current_->line, current_->column); }

    void declare(const std::string& decl, std::map<std::string, Register>& regs, std::size_t& total) {
        const std::string d = trim(decl);
        const auto lb = d.find('[');
        const auto rb = d.find(']');
        if (lb == std::string::npos || rb == std::string::npos || rb < lb) fail("malformed register declaration");
        const std::string name = trim(d.substr(0, lb));
        std::size_t size = 0;
        try {
            size = std::stoul(d.substr(lb + 1, rb - lb - 1));
        } catch (const std::exception&) {
            fail("malformed register size");
        }
        if (name.empty()) fail("register needs a name");
        if (regs.contains(name)) fail("register '" + name + "' declared twice");
        regs[name] = Register{total, size};
        total += size;
    }

    // Returns the flat qubit indices an argument refers to (one for q[i], all for q).
    std::vector<Qubit> resolve(const std::string& arg) const {
        const std::string a = trim(arg);
        const auto lb = a.find('[');
        const std::string name = trim(a.substr(0, lb));
        auto it = qregs_.find(name);
        if (it == qregs_.end()) fail("unknown quantum register '" + name + "'");
        if (lb == std::string::npos) {
            std::vector<Qubit> all;
            for (std::size_t i = 0; i < it->second.size; ++i) all.push_back(it->second.offset + i);
            return all;
        }
        const auto rb = a.find(']', lb);
        if (rb == std::string::npos) fail("missing ']' in argument");
        std::size_t idx = 0;
        try {
            idx = std::stoul(a.substr(lb + 1, rb - lb - 1));
        } catch (const std::exception&) {
            fail("malformed qubit index");
        }
        if (idx >= it->second.size) fail("qubit index out of range for register '" + name + "'");
        return {it->second.offset + idx};
    }

    static std::vector<std::string> split_commas(const std::string& s) {
        std::vector<std::string> parts;
        int depth = 0;
        std::string cur;
        for (char c : s) {
            if (c == '(') ++depth;
            if (c == ')') --depth;
            if (c == ',' && depth == 0) {
                parts.push_back(trim(cur));
                cur.clear();
            } else {
                cur += c;
            }
        }
        if (!trim(cur).empty()) parts.push_back(trim(cur));
        return parts;
    }

    void handle(const std::string& body, Circuit& c) {
        if (body.empty()) return;
        if (body.rfind("OPENQASM", 0) == 0 || body.rfind("include", 0) == 0 || body.rfind("qreg", 0) == 0) return;
        if (body.rfind("creg", 0) == 0) return;
        if (body.rfind("gate ", 0) == 0 || body.rfind("opaque ", 0) == 0) return;

        if (body.rfind("measure", 0) == 0) {
            const auto arrow = body.find("->");
            if (arrow == std::string::npos) fail("measure needs '->'");
            const auto qs = resolve(body.substr(7, arrow - 7));
            const std::string dst = trim(body.substr(arrow + 2));
            for (Qubit q : qs) add(c, Opaque{"measure", {q}, {dst}});
            return;
        }

        std::size_t i = 0;
        while (i < body.size() && (std::isalnum(static_cast<unsigned char>(body[i])) || body[i] == '_')) ++i;
        const std::string name = body.substr(0, i);
        if (name.empty()) fail("expected a gate name");
        std::vector<std::string> params;
        std::size_t rest = i;
        while (rest < body.size() && std::isspace(static_cast<unsigned char>(body[rest]))) ++rest;
        if (rest < body.size() && body[rest] == '(') {
            int depth = 0;
            std::size_t close = rest;
            for (; close < body.size(); ++close) {
                if (body[close] == '(') ++depth;
                if (body[close] == ')' && --depth == 0) break;
            }
            if (close == body.size()) fail("missing ')' in gate parameters");
            params = split_commas(body.substr(rest + 1, close - rest - 1));
            rest = close + 1;
        }
        const auto args = split_commas(body.substr(rest));
        if (args.empty() && name != "barrier") fail("gate '" + name + "' has no qubit arguments");

        std::vector<std::vector<Qubit>> resolved;
        resolved.reserve(args.size());
        for (const auto& a : args) resolved.push_back(resolve(a));

        if (name == "barrier") {
            std::vector<Qubit> qs;
            for (const auto& r : resolved) qs.insert(qs.end(), r.begin(), r.end());
            if (args.empty()) {
                for (Qubit q = 0; q < num_qubits_; ++q) qs.push_back(q);
            }
            add(c, Opaque{"barrier", qs, {}});
            return;
        }

        // Register broadcast: every whole-register argument must have the same length.
        std::size_t width = 1;
        for (const auto& r : resolved) {
            if (r.size() != 1) {
                if (width != 1 && width != r.size()) fail("register arguments differ in size");
                width = r.size();
            }
        }
        for (std::size_t k = 0; k < width; ++k) {
            std::vector<Qubit> qs;
            for (const auto& r : resolved) qs.push_back(r.size() == 1 ? r[0] : r[k]);
            emit(c, name, params, qs);
        }
    }

    void emit(Circuit& c, const std::string& name, const std::vector<std::string>& params, const std::vector<Qubit>& qs) {
        if (name == "cx" || name == "CX") {
            if (qs.size() != 2 || !params.empty()) fail("cx takes two qubits and no parameters");
            add(c, Cnot{qs[0], qs[1]});
        } else if (name == "rz") {
            if (qs.size() != 1 || params.size() != 1) fail("rz takes one parameter and one qubit");
            try {
                add(c, Rz{Angle::parse(params[0]), qs[0]});
            } catch (const ParseError& e) {
                fail(e.what());
            }
        } else {
            add(c, Opaque{name, qs, params});
        }
    }

    void add(Circuit& c, Gate g) const {
        try {
            c.add(std::move(g));
        } catch (const ValidationError& e) {
            fail(e.what());
        }
    }

    const Statement* current_ = nullptr;
    std::map<std::string, Register> qregs_;
    std::size_t num_qubits_ = 0;
};

} // namespace

Circuit parse_qasm(std::string_view text) { return Parser{}.run(text); }

Circuit read_qasm_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open circuit file '" + path.string() + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_qasm(ss.str());
}

std::string to_qasm(const Circuit& c) {
    std::ostringstream os;
    os << "OPENQASM 2.0;\ninclude \"qelib1.inc\";\n";
    os << "qreg q[" << c.num_qubits() << "];\n";
    for (const auto& g : c.gates()) {
        if (const auto* cx = std::get_if<Cnot>(&g)) {
            os << "cx q[" << cx->control << "],q[" << cx->target << "];\n";
        } else if (const auto* rz = std::get_if<Rz>(&g)) {
            os << "rz(" << rz->angle.to_string() << ") q[" << rz->qubit << "];\n";
        } else {
            const auto& op = std::get<Opaque>(g);
            if (op.name == "measure" && op.params.size() == 1 && op.qubits.size() == 1) {
                os << "measure q[" << op.qubits[0] << "] -> " << op.params[0] << ";\n";
                continue;
            }
            os << op.name;
            if (!op.params.empty()) {
                os << '(';
                for (std::size_t i = 0; i < op.params.size(); ++i) os << (i ? "," : "") << op.params[i];
                os << ')';
            }
            for (std::size_t i = 0; i < op.qubits.size(); ++i) os << (i ? "," : " ") << "q[" << op.qubits[i] << ']';
            os << ";\n";
        }
    }
    return os.str();
}

} // namespace hopps
