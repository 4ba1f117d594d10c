#include "tsglm/tableau_io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

namespace tsglm {

namespace {

constexpr const char* kMagic = "tsglm-tableau v1";

long long parse_int(std::string_view s, int line) {
    long long v = 0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || p != s.data() + s.size())
        throw ParseError(line, "expected integer, got '" + std::string(s) + "'");
    return v;
}

Rational parse_rational(std::string_view s, int line) {
    const size_t slash = s.find('/');
    if (slash == std::string_view::npos) return Rational(parse_int(s, line));
    return {parse_int(s.substr(0, slash), line), parse_int(s.substr(slash + 1), line)};
}

Quad parse_quad(std::string_view s, int line) {
    if (s.empty()) throw ParseError(line, "empty scalar");
    if (s.front() != '(') return Quad(parse_rational(s, line));
    constexpr std::string_view tag = ")sqrt41";
    const size_t close = s.find(tag);
    const size_t comma = s.find(',');
    if (close == std::string_view::npos || comma == std::string_view::npos ||
        comma > close || close + tag.size() != s.size())
        throw ParseError(line, "malformed sqrt41 scalar '" + std::string(s) + "'");
    return {parse_rational(s.substr(1, comma - 1), line),
            parse_rational(s.substr(comma + 1, close - comma - 1), line)};
}

template <Scalar S>
using ScalarParser = S (*)(std::string_view, int);

std::vector<std::string_view> split_ws(std::string_view s) {
    std::vector<std::string_view> out;
    size_t i = 0;
    while (i < s.size()) {
        while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
        size_t j = i;
        while (j < s.size() && s[j] != ' ' && s[j] != '\t') ++j;
        if (j > i) out.push_back(s.substr(i, j - i));
        i = j;
    }
    return out;
}

template <Scalar S>
Poly<S> parse_poly(std::string_view s, int line, ScalarParser<S> scalar) {
    std::vector<S> coeffs;
    for (std::string_view tok : split_ws(s)) coeffs.push_back(scalar(tok, line));
    return Poly<S>(std::move(coeffs));
}

struct RawEntry {
    std::string key;
    std::string value;
    int line;
};

/// key = value lines; '#' starts a comment; blank lines ignored.
std::vector<RawEntry> tokenize(std::istream& in) {
    std::vector<RawEntry> out;
    std::string raw;
    int line = 0;
    bool magic_seen = false;
    while (std::getline(in, raw)) {
        ++line;
        if (const size_t hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
        while (!raw.empty() && (raw.back() == ' ' || raw.back() == '\t' || raw.back() == '\r'))
            raw.pop_back();
        size_t start = raw.find_first_not_of(" \t");
        if (start == std::string::npos) continue;
        std::string body = raw.substr(start);
        if (!magic_seen) {
            if (body != kMagic) throw ParseError(line, std::string("expected header '") + kMagic + "'");
            magic_seen = true;
            continue;
        }
        const size_t eq = body.find('=');
        if (eq == std::string::npos) throw ParseError(line, "expected 'key = value'");
        std::string key = body.substr(0, eq);
        std::string value = body.substr(eq + 1);
        while (!key.empty() && (key.back() == ' ' || key.back() == '\t')) key.pop_back();
        size_t vs = value.find_first_not_of(" \t");
        value = vs == std::string::npos ? std::string{} : value.substr(vs);
        if (key.empty()) throw ParseError(line, "empty key");
        out.push_back({std::move(key), std::move(value), line});
    }
    if (!magic_seen) throw ParseError(line ? line : 1, std::string("missing header '") + kMagic + "'");
    return out;
}

/// "u[2]" -> ("u", {2}); "a[2][1]" -> ("a", {2,1}).
std::pair<std::string, std::vector<int>> parse_key(const std::string& key, int line) {
    const size_t br = key.find('[');
    if (br == std::string::npos) return {key, {}};
    std::string base = key.substr(0, br);
    std::vector<int> idx;
    size_t i = br;
    while (i < key.size()) {
        if (key[i] != '[') throw ParseError(line, "malformed key '" + key + "'");
        const size_t close = key.find(']', i);
        if (close == std::string::npos) throw ParseError(line, "malformed key '" + key + "'");
        idx.push_back(static_cast<int>(parse_int(
            std::string_view(key).substr(i + 1, close - i - 1), line)));
        i = close + 1;
    }
    return {base, idx};
}

template <Scalar S>
LoadedTableau assemble(const std::vector<RawEntry>& entries, ScalarParser<S> scalar,
                       const std::string& name, int stages, std::optional<int> order,
                       std::optional<int> stage_order) {
    Tableau<S> t = Tableau<S>::empty(name, stages);
    for (auto& p : t.u) p = Poly<S>{};  // entries are authoritative; default all-zero
    t.v = Poly<S>{};

    auto stage_index = [&](int i, int line) -> size_t {
        if (i < 1 || i > stages) throw ParseError(line, "stage index out of range");
        return static_cast<size_t>(i - 1);
    };
    for (const RawEntry& e : entries) {
        auto [base, idx] = parse_key(e.key, e.line);
        if (base == "name" || base == "scalar" || base == "stages" || base == "order" ||
            base == "stage_order")
            continue;
        if (base == "c") {
            auto toks = split_ws(e.value);
            if (static_cast<int>(toks.size()) != stages)
                throw ParseError(e.line, "c needs exactly " + std::to_string(stages) + " values");
            for (int i = 0; i < stages; ++i)
                t.c[static_cast<size_t>(i)] = scalar(toks[static_cast<size_t>(i)], e.line);
            continue;
        }
        if (base == "v") {
            if (!idx.empty()) throw ParseError(e.line, "v takes no index");
            t.v = parse_poly<S>(e.value, e.line, scalar);
            continue;
        }
        if (base == "u" || base == "b" || base == "bt") {
            if (idx.size() != 1) throw ParseError(e.line, base + " needs one index");
            const size_t i = stage_index(idx[0], e.line);
            auto& dst = base == "u" ? t.u[i] : (base == "b" ? t.b[i] : t.b_tilde[i]);
            dst = parse_poly<S>(e.value, e.line, scalar);
            continue;
        }
        if (base == "a" || base == "at") {
            if (idx.size() != 2) throw ParseError(e.line, base + " needs two indices");
            const size_t i = stage_index(idx[0], e.line);
            const size_t j = stage_index(idx[1], e.line);
            auto& dst = base == "a" ? t.a[i][j] : t.a_tilde[i][j];
            dst = parse_poly<S>(e.value, e.line, scalar);
            continue;
        }
        throw ParseError(e.line, "unknown key '" + e.key + "'");
    }
    LoadedTableau lt;
    lt.tableau = std::move(t);
    lt.declared_order = order;
    lt.declared_stage_order = stage_order;
    return lt;
}

template <Scalar S>
void emit_poly(std::ostream& os, const char* key, const Poly<S>& p) {
    if (p.is_zero()) return;
    os << key << " =";
    for (const S& c : p.coeffs()) os << ' ' << scalar_traits<S>::str(c);
    os << '\n';
}

template <Scalar S>
std::string serialize_impl(const Tableau<S>& t, std::optional<int> order,
                           std::optional<int> stage_order) {
    std::ostringstream os;
    os << kMagic << '\n';
    os << "name = " << t.name << '\n';
    os << "scalar = " << scalar_traits<S>::name() << '\n';
    os << "stages = " << t.s << '\n';
    if (order) os << "order = " << *order << '\n';
    if (stage_order) os << "stage_order = " << *stage_order << '\n';
    os << "c =";
    for (const S& ci : t.c) os << ' ' << scalar_traits<S>::str(ci);
    os << '\n';
    for (int i = 0; i < t.s; ++i) {
        const std::string si = std::to_string(i + 1);
        emit_poly(os, ("u[" + si + "]").c_str(), t.u[static_cast<size_t>(i)]);
    }
    emit_poly(os, "v", t.v);
    for (int i = 0; i < t.s; ++i)
        for (int j = 0; j < t.s; ++j) {
            const std::string sij = "[" + std::to_string(i + 1) + "][" + std::to_string(j + 1) + "]";
            emit_poly(os, ("a" + sij).c_str(), t.a[static_cast<size_t>(i)][static_cast<size_t>(j)]);
            emit_poly(os, ("at" + sij).c_str(),
                      t.a_tilde[static_cast<size_t>(i)][static_cast<size_t>(j)]);
        }
    for (int i = 0; i < t.s; ++i) {
        const std::string si = std::to_string(i + 1);
        emit_poly(os, ("b[" + si + "]").c_str(), t.b[static_cast<size_t>(i)]);
        emit_poly(os, ("bt[" + si + "]").c_str(), t.b_tilde[static_cast<size_t>(i)]);
    }
    return os.str();
}

}  // namespace

std::string serialize(const Tableau<Rational>& t, std::optional<int> declared_order,
                      std::optional<int> declared_stage_order) {
    return serialize_impl(t, declared_order, declared_stage_order);
}

std::string serialize(const Tableau<Quad>& t, std::optional<int> declared_order,
                      std::optional<int> declared_stage_order) {
    return serialize_impl(t, declared_order, declared_stage_order);
}

std::string serialize(const LoadedTableau& lt) {
    return std::visit(
        [&](const auto& t) { return serialize_impl(t, lt.declared_order, lt.declared_stage_order); },
        lt.tableau);
}

LoadedTableau parse_tableau(std::istream& in) {
    const std::vector<RawEntry> entries = tokenize(in);

    std::string name = "unnamed";
    std::string scalar_kind;
    int stages = -1;
    std::optional<int> order, stage_order;
    for (const RawEntry& e : entries) {
        if (e.key == "name") name = e.value;
        else if (e.key == "scalar") scalar_kind = e.value;
        else if (e.key == "stages") stages = static_cast<int>(parse_int(e.value, e.line));
        else if (e.key == "order") order = static_cast<int>(parse_int(e.value, e.line));
        else if (e.key == "stage_order") stage_order = static_cast<int>(parse_int(e.value, e.line));
    }
    const int last_line = entries.empty() ? 1 : entries.back().line;
    if (stages <= 0) throw ParseError(last_line, "missing or invalid 'stages'");
    if (scalar_kind == "rational")
        return assemble<Rational>(entries, &parse_rational, name, stages, order, stage_order);
    if (scalar_kind == "sqrt41")
        return assemble<Quad>(entries, &parse_quad, name, stages, order, stage_order);
    throw ParseError(last_line, "missing or unknown 'scalar' (expected rational or sqrt41)");
}

LoadedTableau parse_tableau_string(const std::string& text) {
    std::istringstream is(text);
    return parse_tableau(is);
}

LoadedTableau load_tableau_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError(0, "cannot open '" + path + "'");
    return parse_tableau(in);
}

}  // namespace tsglm
