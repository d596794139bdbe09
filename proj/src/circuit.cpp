#include "qsim/circuit.hpp"

#include "qsim/kernels.hpp"

#include <charconv>
#include <cstdio>
#include <sstream>

namespace qsim {

namespace {

/// SplitMix64: output i of the stream for a given seed is
/// mix(seed + (i+1) * 0x9E3779B97F4A7C15). Fixed here so generated circuits
/// are reproducible across platforms and languages.
class SplitMix64 {
  public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    /// Uniform draw from [0, n); n is tiny here so modulo bias is irrelevant.
    std::uint32_t below(std::uint32_t n) {
        return static_cast<std::uint32_t>(next() % n);
    }

  private:
    std::uint64_t state_;
};

constexpr int kCzPatternPeriod = 3;

} // namespace

std::vector<std::pair<int, int>> cz_layer_pairs(int num_qubits, int layer) {
    std::vector<std::pair<int, int>> pairs;
    if (layer < 1)
        return pairs; // layer 0 is the Hadamard layer
    const int phase = (layer - 1) % kCzPatternPeriod;
    for (int i = phase; i + 1 < num_qubits; i += kCzPatternPeriod)
        pairs.emplace_back(i, i + 1);
    return pairs;
}

Circuit generate_random_circuit(const RandomCircuitSpec& spec) {
    if (spec.num_qubits < 2)
        throw DomainError("random circuits need at least 2 qubits for the "
                          "linear CZ pattern");
    if (spec.depth < 1)
        throw DomainError("circuit depth must be at least 1");

    const int n = spec.num_qubits;
    SplitMix64 rng(spec.seed);
    Circuit circuit{n, spec.depth, {}};

    for (int q = 0; q < n; ++q)
        circuit.ops.push_back({{Gate::H}, q, {}});

    // Per qubit: the single-qubit gate applied in the previous layer (none if
    // the qubit sat in a CZ), and whether its first post-H single was placed.
    constexpr int kNone = -1;
    std::vector<int> prev_single(n, kNone);
    std::vector<char> had_first_t(n, 0);
    const Gate singles[] = {Gate::T, Gate::SqrtX, Gate::SqrtY};

    std::vector<char> busy(n, 0);
    for (int layer = 1; layer < spec.depth; ++layer) {
        std::fill(busy.begin(), busy.end(), 0);
        for (const auto& [a, b] : cz_layer_pairs(n, layer)) {
            circuit.ops.push_back({{Gate::CZ}, a, {b}});
            busy[a] = busy[b] = 1;
        }
        std::vector<int> next_single(n, kNone);
        for (int q = 0; q < n; ++q) {
            if (busy[q])
                continue;
            int choice;
            if (!had_first_t[q]) {
                choice = 0; // T
                had_first_t[q] = 1;
            } else if (prev_single[q] == kNone) {
                choice = static_cast<int>(rng.below(3));
            } else {
                // pick from the two gates that differ from last layer's
                choice = static_cast<int>(rng.below(2));
                if (choice >= prev_single[q])
                    ++choice;
            }
            circuit.ops.push_back({{singles[choice]}, q, {}});
            next_single[q] = choice;
        }
        prev_single = std::move(next_single);
    }
    return circuit;
}

GateCounts gate_counts(const Circuit& circuit) {
    GateCounts counts;
    for (const auto& op : circuit.ops) {
        if (op.controls.empty())
            ++counts.single;
        else
            ++counts.controlled;
    }
    return counts;
}

namespace {

std::string format_angle(double angle) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", angle);
    return buf;
}

} // namespace

std::string serialize(const Circuit& circuit) {
    std::ostringstream out;
    out << "qubits " << circuit.num_qubits << " depth " << circuit.depth
        << "\n";
    for (const auto& op : circuit.ops) {
        out << gate_name(op.gate.gate) << ' ' << op.target;
        for (int c : op.controls)
            out << ' ' << c;
        if (gate_has_angle(op.gate.gate))
            out << ' ' << format_angle(op.gate.angle);
        out << "\n";
    }
    return out.str();
}

namespace {

[[noreturn]] void parse_fail(int line, const std::string& what) {
    throw ParseError("line " + std::to_string(line) + ": " + what);
}

int parse_int(const std::string& tok, int line) {
    int value = 0;
    const auto [ptr, ec] =
        std::from_chars(tok.data(), tok.data() + tok.size(), value);
    if (ec != std::errc{} || ptr != tok.data() + tok.size())
        parse_fail(line, "expected an integer, got '" + tok + "'");
    return value;
}

double parse_double(const std::string& tok, int line) {
    try {
        std::size_t used = 0;
        const double value = std::stod(tok, &used);
        if (used != tok.size())
            parse_fail(line, "expected a number, got '" + tok + "'");
        return value;
    } catch (const std::invalid_argument&) {
        parse_fail(line, "expected a number, got '" + tok + "'");
    } catch (const std::out_of_range&) {
        parse_fail(line, "number out of range: '" + tok + "'");
    }
}

std::vector<std::string> tokenize(const std::string& line) {
    std::vector<std::string> toks;
    std::istringstream in(line);
    std::string tok;
    while (in >> tok) {
        if (tok[0] == '#')
            break;
        toks.push_back(tok);
    }
    return toks;
}

} // namespace

Circuit parse(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::string line;
    Circuit circuit;
    bool saw_header = false;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto toks = tokenize(line);
        if (toks.empty())
            continue;
        if (!saw_header) {
            if (toks.size() != 4 || toks[0] != "qubits" || toks[2] != "depth")
                parse_fail(line_no, "expected header 'qubits N depth D'");
            circuit.num_qubits = parse_int(toks[1], line_no);
            circuit.depth = parse_int(toks[3], line_no);
            if (circuit.num_qubits < 1)
                parse_fail(line_no, "qubit count must be positive");
            saw_header = true;
            continue;
        }
        GateOp op;
        Gate kind;
        try {
            kind = gate_from_name(toks[0]);
        } catch (const DomainError& e) {
            parse_fail(line_no, e.what());
        }
        op.gate.gate = kind;
        const bool angled = gate_has_angle(kind);
        if (toks.size() < 2 || (angled && toks.size() < 3))
            parse_fail(line_no, "missing operands for " + toks[0]);
        op.target = parse_int(toks[1], line_no);
        const std::size_t control_end = toks.size() - (angled ? 1 : 0);
        for (std::size_t i = 2; i < control_end; ++i)
            op.controls.push_back(parse_int(toks[i], line_no));
        if (angled)
            op.gate.angle = parse_double(toks.back(), line_no);

        if (op.target < 0 || op.target >= circuit.num_qubits)
            parse_fail(line_no, "target " + std::to_string(op.target) +
                                    " out of range for " +
                                    std::to_string(circuit.num_qubits) +
                                    " qubits");
        for (int c : op.controls) {
            if (c < 0 || c >= circuit.num_qubits)
                parse_fail(line_no, "control " + std::to_string(c) +
                                        " out of range");
            if (c == op.target)
                parse_fail(line_no, "control overlaps target");
        }
        circuit.ops.push_back(std::move(op));
    }
    if (!saw_header)
        parse_fail(line_no + 1, "missing 'qubits N depth D' header");
    return circuit;
}

void run_circuit(const Circuit& circuit, Register& reg, int workers) {
    if (reg.num_qubits() != circuit.num_qubits)
        throw DomainError("circuit is for " +
                          std::to_string(circuit.num_qubits) +
                          " qubits but the register has " +
                          std::to_string(reg.num_qubits()));
    for (const auto& op : circuit.ops)
        apply_named_gate(reg, op.gate, op.controls, op.target, workers);
}

} // namespace qsim
