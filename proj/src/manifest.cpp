#include "crsing/manifest.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

#include "crsing/parser.hpp"

namespace crsing {
namespace {

std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    std::size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

// Column (1-based) of the first non-blank character of `piece` inside `line`
// searching from `from` (0-based); falls back to the search origin.
int column_of(const std::string& line, const std::string& piece, std::size_t from) {
    if (piece.empty()) return static_cast<int>(from) + 1;
    std::size_t at = line.find(piece, from);
    return static_cast<int>(at == std::string::npos ? from : at) + 1;
}

bool valid_identifier(const std::string& s) {
    if (s.empty()) return false;
    if (!std::isalpha(static_cast<unsigned char>(s[0])) && s[0] != '_') return false;
    for (char c : s)
        if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
    return s != "i" && s != "conj";
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> parts;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            parts.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    parts.push_back(cur);
    return parts;
}

// "name:role" pairs separated by commas; role is complex or real.
std::vector<std::pair<std::string, bool>> parse_variable_list(const std::string& value, int line,
                                                              int col) {
    std::vector<std::pair<std::string, bool>> vars;
    for (const auto& raw : split(value, ',')) {
        std::string entry = trim(raw);
        if (entry.empty()) throw ManifestError("empty variable entry", line, col);
        std::size_t sep = entry.find(':');
        if (sep == std::string::npos)
            throw ManifestError("variable entry '" + entry + "' needs a :role suffix", line, col);
        std::string name = trim(entry.substr(0, sep));
        std::string role = trim(entry.substr(sep + 1));
        if (!valid_identifier(name))
            throw ManifestError("invalid variable name '" + name + "'", line, col);
        bool is_complex;
        if (role == "complex")
            is_complex = true;
        else if (role == "real")
            is_complex = false;
        else
            throw ManifestError("variable role must be complex or real, got '" + role + "'", line,
                                col);
        for (const auto& [existing, unused] : vars)
            if (existing == name)
                throw ManifestError("duplicate variable '" + name + "'", line, col);
        vars.emplace_back(name, is_complex);
    }
    return vars;
}

long parse_integer(const std::string& value, int line, int col) {
    std::size_t used = 0;
    long v = 0;
    try {
        v = std::stol(value, &used);
    } catch (const std::exception&) {
        throw ManifestError("expected an integer, got '" + value + "'", line, col);
    }
    if (used != value.size())
        throw ManifestError("trailing characters after integer '" + value + "'", line, col);
    return v;
}

struct Cursor {
    std::string section;
    int line = 0;
    std::string raw;  // current line, comment stripped
};

// Strips a '#' comment that is not inside a quoted string.
std::string strip_comment(const std::string& line) {
    bool quoted = false;
    for (std::size_t k = 0; k < line.size(); ++k) {
        if (line[k] == '"') quoted = !quoted;
        if (line[k] == '#' && !quoted) return line.substr(0, k);
    }
    return line;
}

// Quoted expression value: returns the inner text and its starting column.
TextField quoted_field(const std::string& value, const Cursor& at, int value_col) {
    std::string v = trim(value);
    if (v.size() < 2 || v.front() != '"')
        throw ManifestError("expected a quoted expression", at.line, value_col);
    if (v.back() != '"' || v.size() == 1)
        throw ManifestError("unterminated quoted expression", at.line, value_col);
    std::string inner = v.substr(1, v.size() - 2);
    if (inner.find('"') != std::string::npos)
        throw ManifestError("stray quote inside expression", at.line, value_col);
    std::size_t open = at.raw.find('"');
    return TextField{inner, at.line, static_cast<int>(open) + 2};
}

}  // namespace

Manifest parse_manifest(const std::string& text) {
    Manifest m;
    std::istringstream in(text);
    std::string line;
    Cursor at;
    std::vector<std::string> seen_sections;
    bool saw_variables = false, saw_target = false;

    while (std::getline(in, line)) {
        ++at.line;
        at.raw = strip_comment(line);
        std::string body = trim(at.raw);
        if (body.empty()) continue;

        if (body.front() == '[') {
            if (body.back() != ']')
                throw ManifestError("unterminated section header", at.line, 1);
            std::string name = trim(body.substr(1, body.size() - 2));
            if (name != "manifold" && name != "map" && name != "options")
                throw ManifestError("unknown section [" + name + "]", at.line, 1);
            for (const auto& s : seen_sections)
                if (s == name) throw ManifestError("duplicate section [" + name + "]", at.line, 1);
            seen_sections.push_back(name);
            at.section = name;
            if (name == "manifold") m.manifold_line = at.line;
            if (name == "map") m.map_line = at.line;
            continue;
        }

        std::size_t eq = at.raw.find('=');
        if (eq == std::string::npos)
            throw ManifestError("expected key = value", at.line, 1);
        std::string key = trim(at.raw.substr(0, eq));
        std::string value = trim(at.raw.substr(eq + 1));
        int key_col = column_of(at.raw, key, 0);
        int value_col = column_of(at.raw, value, eq + 1);
        if (key.empty()) throw ManifestError("empty key", at.line, 1);
        if (at.section.empty())
            throw ManifestError("key '" + key + "' before any section", at.line, key_col);
        if (value.empty())
            throw ManifestError("key '" + key + "' has no value", at.line, value_col);

        if (at.section == "manifold") {
            if (key == "ambient_dim") {
                m.ambient_dim = static_cast<int>(parse_integer(value, at.line, value_col));
                if (m.ambient_dim < 1)
                    throw ManifestError("ambient_dim must be positive", at.line, value_col);
            } else if (key == "variables") {
                if (saw_variables)
                    throw ManifestError("variables declared twice", at.line, key_col);
                saw_variables = true;
                m.variables = parse_variable_list(value, at.line, value_col);
            } else if (key == "graph") {
                if (!m.graph_var.empty())
                    throw ManifestError("graph declared twice", at.line, key_col);
                m.graph_var = value;
            } else if (key == "rho") {
                if (!m.rho.text.empty())
                    throw ManifestError("rho declared twice", at.line, key_col);
                m.rho = quoted_field(value, at, value_col);
            } else if (key == "equation") {
                m.equations.push_back(quoted_field(value, at, value_col));
            } else {
                throw ManifestError("unknown key '" + key + "' in [manifold]", at.line, key_col);
            }
        } else if (at.section == "map") {
            if (key == "component") {
                m.map_components.push_back(quoted_field(value, at, value_col));
            } else if (key == "target") {
                if (saw_target) throw ManifestError("target declared twice", at.line, key_col);
                saw_target = true;
                m.target_variables = parse_variable_list(value, at.line, value_col);
            } else if (key == "image_graph") {
                m.image_graph_var = value;
            } else if (key == "image_rho") {
                m.image_rho = quoted_field(value, at, value_col);
            } else if (key == "base") {
                std::size_t off = eq + 1;
                for (const auto& raw_entry : split(value, ',')) {
                    std::string entry = trim(raw_entry);
                    if (entry.empty())
                        throw ManifestError("empty base entry", at.line, value_col);
                    m.base.push_back(
                        TextField{entry, at.line, column_of(at.raw, entry, off)});
                    off += raw_entry.size() + 1;
                }
            } else {
                throw ManifestError("unknown key '" + key + "' in [map]", at.line, key_col);
            }
        } else {
            if (key == "degree_cap") {
                long v = parse_integer(value, at.line, value_col);
                if (v < 1) throw ManifestError("degree_cap must be positive", at.line, value_col);
                m.degree_cap = static_cast<int>(v);
            } else if (key == "seed") {
                try {
                    std::size_t used = 0;
                    m.seed = std::stoull(value, &used);
                    if (used != value.size()) throw std::invalid_argument(value);
                } catch (const std::exception&) {
                    throw ManifestError("expected an unsigned integer seed", at.line, value_col);
                }
            } else if (key == "method") {
                if (value != "order" && value != "local-ring" && value != "count" &&
                    value != "all")
                    throw ManifestError(
                        "method must be order, local-ring, count or all, got '" + value + "'",
                        at.line, value_col);
                m.method = value;
            } else if (key == "directions") {
                std::size_t off = eq + 1;
                for (const auto& vec_raw : split(value, ';')) {
                    std::vector<TextField> vec;
                    std::size_t entry_off = off;
                    for (const auto& raw_entry : split(vec_raw, ',')) {
                        std::string entry = trim(raw_entry);
                        if (entry.empty())
                            throw ManifestError("empty direction entry", at.line, value_col);
                        vec.push_back(
                            TextField{entry, at.line, column_of(at.raw, entry, entry_off)});
                        entry_off += raw_entry.size() + 1;
                    }
                    m.directions.push_back(std::move(vec));
                    off += vec_raw.size() + 1;
                }
            } else {
                throw ManifestError("unknown key '" + key + "' in [options]", at.line, key_col);
            }
        }
    }

    if (m.manifold_line == 0)
        throw ManifestError("manifest declares no [manifold] section", 1, 1);
    return m;
}

Manifest load_manifest(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ManifestError("cannot read manifest '" + path + "'", 0, 0);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_manifest(buf.str());
}

namespace {

Polynomial parse_field(const TextField& f, const RingPtr& ring) {
    try {
        return parse_polynomial(f.text, ring);
    } catch (const ParseError& e) {
        throw ManifestError(e.what(), f.line, f.column + e.pos);
    }
}

Rational parse_rational(const TextField& f) {
    try {
        Rational q(f.text);
        q.canonicalize();
        return q;
    } catch (const std::exception&) {
        throw ManifestError("expected a rational number, got '" + f.text + "'", f.line, f.column);
    }
}

int find_complex_slot(const RingPtr& ring, const std::string& name, int line) {
    int slot = ring->find(name);
    if (slot < 0) throw ManifestError("graph variable '" + name + "' is not declared", line, 1);
    if (ring->var(slot).role != VarRole::Holomorphic)
        throw ManifestError("graph variable '" + name + "' must be complex", line, 1);
    return slot;
}

}  // namespace

Scene build_scene(const Manifest& m) {
    Scene s;
    s.manifest = m;

    if (m.variables.empty())
        throw ManifestError("[manifold] declares no variables", m.manifold_line, 1);
    int complex_count = 0;
    for (const auto& [name, is_complex] : m.variables) complex_count += is_complex ? 1 : 0;
    if (m.ambient_dim != 0 && m.ambient_dim != complex_count)
        throw ManifestError("ambient_dim " + std::to_string(m.ambient_dim) + " does not match " +
                                std::to_string(complex_count) + " complex variables",
                            m.manifold_line, 1);

    std::vector<Ring::Decl> decls;
    for (const auto& [name, is_complex] : m.variables) decls.push_back({name, is_complex});
    s.ring = Ring::make(decls);

    bool graph = !m.graph_var.empty();
    if (graph && !m.equations.empty())
        throw ManifestError("manifold is either a graph or an equation list, not both",
                            m.manifold_line, 1);
    if (!graph && m.equations.empty())
        throw ManifestError("manifold needs either graph/rho or equation entries",
                            m.manifold_line, 1);
    if (graph && m.rho.text.empty())
        throw ManifestError("graph manifold needs rho", m.manifold_line, 1);
    if (!graph && !m.rho.text.empty())
        throw ManifestError("rho without a graph variable", m.rho.line, m.rho.column);

    if (graph) {
        int w_slot = find_complex_slot(s.ring, m.graph_var, m.manifold_line);
        Polynomial rho = parse_field(m.rho, s.ring);
        try {
            s.manifold = ManifoldSpec::graph(s.ring, w_slot, rho);
        } catch (const std::invalid_argument& e) {
            throw ManifestError(e.what(), m.rho.line, m.rho.column);
        }
    } else {
        std::vector<Polynomial> defining;
        for (const auto& f : m.equations) defining.push_back(parse_field(f, s.ring));
        try {
            s.manifold = ManifoldSpec::general(s.ring, defining);
        } catch (const std::invalid_argument& e) {
            throw ManifestError(e.what(), m.equations.front().line, 1);
        }
    }

    if (!m.map_components.empty()) {
        std::vector<Polynomial> comps;
        for (const auto& f : m.map_components) comps.push_back(parse_field(f, s.ring));

        if (!m.base.empty()) {
            // Recenter the germ: components become t -> F(t + base) - F(base).
            std::vector<int> coords;
            for (int k = 0; k < static_cast<int>(s.ring->size()); ++k)
                if (s.ring->var(k).role != VarRole::Antiholomorphic) coords.push_back(k);
            if (m.base.size() != coords.size())
                throw ManifestError("base needs " + std::to_string(coords.size()) +
                                        " entries, got " + std::to_string(m.base.size()),
                                    m.base.front().line, m.base.front().column);
            std::vector<Polynomial> shift(s.ring->size());
            for (std::size_t k = 0; k < s.ring->size(); ++k)
                shift[k] = Polynomial::variable(s.ring, static_cast<int>(k));
            for (std::size_t k = 0; k < coords.size(); ++k) {
                const TextField& f = m.base[k];
                Polynomial v = parse_field(f, s.ring);
                if (!v.is_constant())
                    throw ManifestError("base entry must be a constant", f.line, f.column);
                GaussianRational c = v.constant_term();
                int slot = coords[k];
                shift[static_cast<std::size_t>(slot)] +=
                    Polynomial::constant(s.ring, c);
                int bar = s.ring->conj_of(slot);
                if (bar >= 0 && bar != slot)
                    shift[static_cast<std::size_t>(bar)] +=
                        Polynomial::constant(s.ring, c.conj());
            }
            Point base_pt(s.ring);
            for (std::size_t k = 0; k < coords.size(); ++k) {
                Polynomial v = parse_field(m.base[k], s.ring);
                base_pt.set(coords[k], v.constant_term());
            }
            for (auto& c : comps) {
                GaussianRational at_base = evaluate(c, base_pt);
                c = c.substitute(shift, s.ring) - Polynomial::constant(s.ring, at_base);
            }
        }

        try {
            s.map = HoloMap::make(s.ring, comps);
        } catch (const std::invalid_argument& e) {
            throw ManifestError(e.what(), m.map_line, 1);
        }

        if (!m.target_variables.empty()) {
            if (m.target_variables.size() != m.map_components.size())
                throw ManifestError("target declares " +
                                        std::to_string(m.target_variables.size()) +
                                        " variables for " +
                                        std::to_string(m.map_components.size()) + " components",
                                    m.map_line, 1);
            std::vector<Ring::Decl> tdecls;
            for (const auto& [name, is_complex] : m.target_variables) {
                if (!is_complex)
                    throw ManifestError("target variables must be complex", m.map_line, 1);
                tdecls.push_back({name, true});
            }
            s.target_ring = Ring::make(tdecls);
        }
        if (!m.image_graph_var.empty()) {
            if (!s.target_ring)
                throw ManifestError("image_graph needs a target declaration", m.map_line, 1);
            if (m.image_rho.text.empty())
                throw ManifestError("image_graph needs image_rho", m.map_line, 1);
            int slot = find_complex_slot(s.target_ring, m.image_graph_var, m.map_line);
            Polynomial irho = parse_field(m.image_rho, s.target_ring);
            try {
                s.image = ManifoldSpec::graph(s.target_ring, slot, irho);
            } catch (const std::invalid_argument& e) {
                throw ManifestError(e.what(), m.image_rho.line, m.image_rho.column);
            }
        }
    } else if (!m.base.empty() || !m.target_variables.empty() || !m.image_graph_var.empty()) {
        throw ManifestError("[map] keys without component entries", m.map_line, 1);
    }

    for (const auto& vec : m.directions) {
        std::vector<Rational> dir;
        for (const auto& f : vec) dir.push_back(parse_rational(f));
        s.directions.push_back(std::move(dir));
    }

    if (m.method == "order")
        s.method = MultiplicityMethod::Order;
    else if (m.method == "local-ring")
        s.method = MultiplicityMethod::LocalRing;
    else if (m.method == "count")
        s.method = MultiplicityMethod::Count;
    else
        s.method = MultiplicityMethod::All;

    return s;
}

}  // namespace crsing
