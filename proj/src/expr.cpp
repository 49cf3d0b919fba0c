#include "summa/expr.hpp"

#include <cctype>
#include <charconv>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <stdexcept>

namespace summa {

namespace {

std::string strip(const std::string& s) {
    std::size_t b = 0;
    std::size_t e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

Index parse_positive_int(const std::string& s, const std::string& expr) {
    Index v = 0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc{} || res.ptr != s.data() + s.size() || v < 1) {
        throw std::invalid_argument("lambda expression '" + expr + "': bad integer '" + s + "'");
    }
    return v;
}

Index checked_mul(Index a, Index b, const std::string& expr) {
    if (a != 0 && b > std::numeric_limits<Index>::max() / a) {
        throw std::invalid_argument("lambda expression '" + expr + "': overflow");
    }
    return a * b;
}

Index checked_pow(Index base, Index exp, const std::string& expr) {
    Index r = 1;
    for (Index i = 0; i < exp; ++i) r = checked_mul(r, base, expr);
    return r;
}

IndexMethod from_list_file(const std::string& path, Index n_max) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("lambda list file '" + path + "': cannot open");
    std::vector<Index> values;
    std::string line;
    while (std::getline(in, line)) {
        line = strip(line);
        if (line.empty() || line[0] == '#') continue;
        values.push_back(parse_positive_int(line, "@" + path));
    }
    if (n_max >= 0 && static_cast<Index>(values.size()) < n_max) {
        throw std::invalid_argument("lambda list file '" + path + "': only " +
                                    std::to_string(values.size()) + " entries, need " +
                                    std::to_string(n_max));
    }
    if (n_max >= 0) values.resize(static_cast<std::size_t>(n_max));
    return IndexMethod::from_values("@" + path, std::move(values));
}

struct LambdaSpec {
    std::string label;
    IndexMethod::Generator gen;
};

LambdaSpec parse_spec(const std::string& raw) {
    const std::string expr = strip(raw);
    if (expr.empty()) throw std::invalid_argument("lambda expression: empty");

    if (expr == "n") {
        return {expr, [](Index n) { return n; }};
    }
    if (auto star = expr.find('*'); star != std::string::npos) {
        const std::string lhs = strip(expr.substr(0, star));
        const std::string rhs = strip(expr.substr(star + 1));
        if (rhs != "n") {
            throw std::invalid_argument("lambda expression '" + expr + "': expected c*n");
        }
        const Index c = parse_positive_int(lhs, expr);
        return {expr, [c, expr](Index n) { return checked_mul(c, n, expr); }};
    }
    if (auto caret = expr.find('^'); caret != std::string::npos) {
        const std::string lhs = strip(expr.substr(0, caret));
        const std::string rhs = strip(expr.substr(caret + 1));
        if (lhs == "n") {
            const Index k = parse_positive_int(rhs, expr);
            return {expr, [k, expr](Index n) { return checked_pow(n, k, expr); }};
        }
        if (rhs == "n") {
            const Index c = parse_positive_int(lhs, expr);
            if (c < 2) {
                throw std::invalid_argument("lambda expression '" + expr +
                                            "': base must be >= 2 for c^n");
            }
            return {expr, [c, expr](Index n) { return checked_pow(c, n, expr); }};
        }
        throw std::invalid_argument("lambda expression '" + expr + "': expected n^k or c^n");
    }
    throw std::invalid_argument("lambda expression '" + expr +
                                "': expected n, c*n, n^k, c^n, or @file");
}

}  // namespace

bool is_lambda_expression(const std::string& expr) {
    try {
        const std::string t = strip(expr);
        if (!t.empty() && t[0] == '@') return true;
        parse_spec(t);
        return true;
    } catch (const std::invalid_argument&) {
        return false;
    }
}

IndexMethod parse_lambda(const std::string& expr, Index n_max) {
    const std::string t = strip(expr);
    if (n_max < 1) throw std::invalid_argument("parse_lambda: n_max must be >= 1");
    if (!t.empty() && t[0] == '@') return from_list_file(t.substr(1), n_max);
    const LambdaSpec spec = parse_spec(t);
    return IndexMethod::from_generator(spec.label, spec.gen, n_max);
}

IndexMethod parse_lambda_for_horizon(const std::string& expr, Index horizon) {
    const std::string t = strip(expr);
    if (horizon < 1) throw std::invalid_argument("parse_lambda: horizon must be >= 1");
    if (!t.empty() && t[0] == '@') {
        IndexMethod full = from_list_file(t.substr(1), -1);
        std::vector<Index> kept;
        for (Index n = 1; n <= full.size() && full.value(n) <= horizon; ++n) {
            kept.push_back(full.value(n));
        }
        if (kept.empty()) {
            throw std::invalid_argument("lambda list '" + t + "': no entries within horizon " +
                                        std::to_string(horizon));
        }
        return IndexMethod::from_values(full.label(), std::move(kept));
    }
    const LambdaSpec spec = parse_spec(t);
    std::vector<Index> values;
    for (Index n = 1;; ++n) {
        const Index v = spec.gen(n);
        if (v > horizon) break;
        values.push_back(v);
    }
    if (values.empty()) {
        throw std::invalid_argument("lambda expression '" + t + "': lambda(1) exceeds horizon " +
                                    std::to_string(horizon));
    }
    IndexMethod materialized = IndexMethod::from_values(spec.label, std::move(values));
    // Reattach the generator so condition reports can extend past the horizon.
    return IndexMethod::from_generator(spec.label, spec.gen, materialized.size());
}

namespace {

struct Cursor {
    const std::string& text;
    std::size_t pos = 0;

    void skip_ws() {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    }
    bool eat(char c) {
        skip_ws();
        if (pos < text.size() && text[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }
    void expect(char c, const char* what) {
        if (!eat(c)) {
            throw std::invalid_argument(std::string("shape literal: expected '") + c + "' " + what +
                                        " in '" + text + "'");
        }
    }
    bool done() {
        skip_ws();
        return pos >= text.size();
    }
};

double parse_number(Cursor& cur) {
    cur.skip_ws();
    const char* begin = cur.text.data() + cur.pos;
    char* end = nullptr;
    const double v = std::strtod(begin, &end);
    if (end == begin) {
        throw std::invalid_argument("shape literal: expected a number in '" + cur.text + "'");
    }
    cur.pos += static_cast<std::size_t>(end - begin);
    return v;
}

MetricPoint parse_point_at(Cursor& cur) {
    cur.expect('(', "to open a point");
    std::vector<double> coords;
    coords.push_back(parse_number(cur));
    while (cur.eat(',')) coords.push_back(parse_number(cur));
    cur.expect(')', "to close a point");
    return MetricPoint(std::move(coords));
}

std::string parse_ident(Cursor& cur) {
    cur.skip_ws();
    std::size_t start = cur.pos;
    while (cur.pos < cur.text.size() &&
           (std::isalpha(static_cast<unsigned char>(cur.text[cur.pos])) ||
            cur.text[cur.pos] == '_')) {
        ++cur.pos;
    }
    return cur.text.substr(start, cur.pos - start);
}

}  // namespace

MetricPoint parse_point(const std::string& text) {
    Cursor cur{text};
    MetricPoint p = parse_point_at(cur);
    if (!cur.done()) throw std::invalid_argument("point literal: trailing input in '" + text + "'");
    return p;
}

std::vector<MetricPoint> parse_probe_list(const std::string& text) {
    std::vector<MetricPoint> probes;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t sep = text.find(';', start);
        const std::string piece =
            strip(text.substr(start, sep == std::string::npos ? std::string::npos : sep - start));
        if (!piece.empty()) probes.push_back(parse_point(piece));
        if (sep == std::string::npos) break;
        start = sep + 1;
    }
    if (probes.empty()) throw std::invalid_argument("probe list: no points in '" + text + "'");
    return probes;
}

ClosedSet parse_shape(const std::string& text) {
    Cursor cur{text};
    const std::string kind = parse_ident(cur);
    cur.expect('(', "after the shape name");

    ClosedSet result = [&]() -> ClosedSet {
        if (kind == "singleton") {
            return ClosedSet::singleton(parse_point_at(cur));
        }
        if (kind == "points") {
            std::vector<MetricPoint> pts;
            pts.push_back(parse_point_at(cur));
            while (cur.eat(',')) pts.push_back(parse_point_at(cur));
            return ClosedSet::finite_points(std::move(pts));
        }
        if (kind == "ball" || kind == "sphere") {
            MetricPoint center = parse_point_at(cur);
            cur.expect(',', "between center and radius");
            const double r = parse_number(cur);
            return kind == "ball" ? ClosedSet::ball(std::move(center), r)
                                  : ClosedSet::sphere(std::move(center), r);
        }
        if (kind == "box") {
            MetricPoint lo = parse_point_at(cur);
            cur.expect(',', "between corners");
            MetricPoint hi = parse_point_at(cur);
            return ClosedSet::axis_box(std::move(lo), std::move(hi));
        }
        if (kind == "hyperplane") {
            MetricPoint normal = parse_point_at(cur);
            cur.expect(',', "between normal and offset");
            const double offset = parse_number(cur);
            return ClosedSet::hyperplane(std::move(normal), offset);
        }
        throw std::invalid_argument("shape literal: unknown shape '" + kind + "'");
    }();

    cur.expect(')', "to close the shape");
    if (!cur.done()) throw std::invalid_argument("shape literal: trailing input in '" + text + "'");
    return result;
}

}  // namespace summa
