#ifndef SEQASM_CORPUS_HPP
#define SEQASM_CORPUS_HPP

#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "seqasm/effectiveness.hpp"
#include "seqasm/parser.hpp"
#include "seqasm/semantics.hpp"

namespace seqasm {

namespace fs = std::filesystem;

inline std::string read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

inline void write_file(const fs::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << content;
}

// ---------------------------------------------------------------------------
// Corpus entries

struct CorpusCase {
    std::string state_file;
    std::string golden_file;
    size_t max_steps = 100;
    std::string expected_outcome;  // terminal | clash | stutter | step-limit | hang
};

struct CorpusEntry {
    std::string name;
    fs::path dir;
    std::string program_file;
    std::vector<CorpusCase> cases;
};

/// Parses dir/manifest.txt:
///   program <file>
///   case <state-file> <golden-file> <max-steps> <expected-outcome>
inline CorpusEntry load_corpus_entry(const fs::path& dir) {
    CorpusEntry entry;
    entry.name = dir.filename().string();
    entry.dir = dir;
    std::istringstream in(read_file(dir / "manifest.txt"));
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ls(line);
        std::string word;
        ls >> word;
        if (word == "program") {
            ls >> entry.program_file;
        } else if (word == "case") {
            CorpusCase c;
            ls >> c.state_file >> c.golden_file >> c.max_steps >> c.expected_outcome;
            if (!ls)
                throw std::runtime_error(entry.name + "/manifest.txt:" + std::to_string(lineno) +
                                         ": malformed case line");
            entry.cases.push_back(std::move(c));
        } else {
            throw std::runtime_error(entry.name + "/manifest.txt:" + std::to_string(lineno) +
                                     ": unknown directive '" + word + "'");
        }
    }
    if (entry.program_file.empty())
        throw std::runtime_error(entry.name + ": manifest names no program");
    return entry;
}

/// Deterministic listing of the bundled entries (subdirectories with a
/// manifest, sorted by name).
inline std::vector<CorpusEntry> corpus_list(const fs::path& root) {
    std::vector<fs::path> dirs;
    for (const auto& e : fs::directory_iterator(root))
        if (e.is_directory() && fs::exists(e.path() / "manifest.txt")) dirs.push_back(e.path());
    std::sort(dirs.begin(), dirs.end());
    std::vector<CorpusEntry> out;
    for (const auto& d : dirs) out.push_back(load_corpus_entry(d));
    return out;
}

inline Program load_program(const fs::path& path) {
    auto r = parse_program(read_file(path));
    if (!r.ok()) {
        std::string msg = "parse failed for " + path.string();
        for (const auto& d : r.diagnostics) msg += "\n  " + d.str();
        throw std::runtime_error(msg);
    }
    return *r.value;
}

inline State load_state(const fs::path& path) {
    auto r = parse_state(read_file(path));
    if (!r.ok()) {
        std::string msg = "parse failed for " + path.string();
        for (const auto& d : r.diagnostics) msg += "\n  " + d.str();
        throw std::runtime_error(msg);
    }
    return *r.value;
}

/// Recomputes one golden trace from the interpreter.
inline std::string derive_golden(const CorpusEntry& entry, const CorpusCase& c) {
    Program program = load_program(entry.dir / entry.program_file);
    State state = load_state(entry.dir / c.state_file);
    Trace trace = run(program, state, c.max_steps);
    if (to_string(trace.outcome) != c.expected_outcome)
        throw std::runtime_error(entry.name + "/" + c.state_file + ": expected outcome " +
                                 c.expected_outcome + ", got " + to_string(trace.outcome));
    return serialize_trace(trace);
}

/// Rewrites all golden trace files of an entry; errors out if two
/// regenerations of a case would differ.
inline void regenerate_goldens(const CorpusEntry& entry) {
    for (const auto& c : entry.cases) {
        std::string once = derive_golden(entry, c);
        std::string twice = derive_golden(entry, c);
        if (once != twice)
            throw std::runtime_error(entry.name + "/" + c.state_file +
                                     ": nondeterministic trace regeneration");
        write_file(entry.dir / c.golden_file, once);
    }
}

/// Checks every golden of an entry byte-for-byte; returns the mismatching
/// case names.
inline std::vector<std::string> verify_goldens(const CorpusEntry& entry) {
    std::vector<std::string> mismatches;
    for (const auto& c : entry.cases) {
        std::string derived = derive_golden(entry, c);
        fs::path golden = entry.dir / c.golden_file;
        if (!fs::exists(golden) || read_file(golden) != derived)
            mismatches.push_back(c.state_file);
    }
    return mismatches;
}

// ---------------------------------------------------------------------------
// Function-computation spec files

/// Format (paths relative to the spec file's directory):
///   program <file>
///   template <state-file>
///   input <term>        (one line per input, in order)
///   output <term>
///   budget <steps>
inline std::pair<Program, FunctionComputationSpec> load_computation_spec(const fs::path& path) {
    fs::path dir = path.parent_path();
    std::istringstream in(read_file(path));
    std::string line;
    Program program;
    FunctionComputationSpec spec;
    bool have_template = false;
    auto parse_term_text = [&](const std::string& text) {
        detail::Parser p(detail::tokenize(text));
        Term t = p.parse_term();
        p.expect_end();
        return t;
    };
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ls(line);
        std::string word, rest;
        ls >> word;
        std::getline(ls, rest);
        size_t start = rest.find_first_not_of(' ');
        rest = start == std::string::npos ? "" : rest.substr(start);
        if (word == "program") program = load_program(dir / rest);
        else if (word == "template") { spec.template_state = load_state(dir / rest); have_template = true; }
        else if (word == "input") spec.inputs.push_back(parse_term_text(rest));
        else if (word == "output") spec.output = parse_term_text(rest);
        else if (word == "budget") spec.step_budget = std::stoull(rest);
        else throw std::runtime_error(path.string() + ": unknown directive '" + word + "'");
    }
    if (!program || !have_template)
        throw std::runtime_error(path.string() + ": spec must name a program and a template");
    return {program, spec};
}

}  // namespace seqasm

#endif
