#include "anq/io.hpp"

#include <json.hpp>

#include <sstream>
#include <utility>

#include "anq/linalg.hpp"

namespace anq {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& path, const std::string& what) {
    throw parse_error(path + ": " + what);
}

json parse_document(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw parse_error(e.what());
    }
}

const json& member(const json& j, const char* key, const std::string& path) {
    if (!j.is_object()) fail(path, "expected an object");
    auto it = j.find(key);
    if (it == j.end()) fail(path, std::string("missing field \"") + key + "\"");
    return *it;
}

void reject_unknown_keys(const json& j, std::initializer_list<const char*> known,
                         const std::string& path) {
    for (const auto& [key, value] : j.items()) {
        (void)value;
        bool ok = false;
        for (const char* k : known) ok = ok || key == k;
        if (!ok) fail(path, "unknown field \"" + key + "\"");
    }
}

long long integer_at(const json& j, const std::string& path, long long lo, long long hi) {
    if (!j.is_number_integer())
        fail(path, "expected an integer, got " + std::string(j.type_name()));
    long long v = j.get<long long>();
    if (v < lo || v > hi)
        fail(path, "value " + std::to_string(v) + " outside [" + std::to_string(lo) + ", " +
                       std::to_string(hi) + "]");
    return v;
}

json field_to_json(const field_spec& fs) {
    json j;
    if (fs.is_prime()) {
        j["kind"] = "prime";
        j["p"] = fs.modulus();
    } else {
        j["kind"] = "rational";
    }
    return j;
}

field_spec field_from_json(const json& j, const std::string& path) {
    const json& kind = member(j, "kind", path);
    if (!kind.is_string()) fail(path + ".kind", "expected a string");
    std::string k = kind.get<std::string>();
    if (k == "rational") {
        reject_unknown_keys(j, {"kind"}, path);
        return field_spec::rational();
    }
    if (k == "prime") {
        reject_unknown_keys(j, {"kind", "p"}, path);
        long long p = integer_at(member(j, "p", path), path + ".p", 2, (1LL << 32) - 1);
        try {
            return field_spec::prime(static_cast<std::uint64_t>(p));
        } catch (const std::invalid_argument& e) {
            fail(path + ".p", e.what());
        }
    }
    fail(path + ".kind", "expected \"prime\" or \"rational\", got \"" + k + "\"");
}

json matrix_to_json(const matrix& m) {
    json rows = json::array();
    for (int i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (int j = 0; j < m.cols(); ++j) row.push_back(m(i, j).str());
        rows.push_back(std::move(row));
    }
    return rows;
}

matrix matrix_from_json(const json& j, int rows, int cols, const field_spec& fs,
                        const std::string& path) {
    if (!j.is_array()) fail(path, "expected an array of rows");
    if (static_cast<int>(j.size()) != rows)
        fail(path, "expected " + std::to_string(rows) + " rows, got " + std::to_string(j.size()));
    matrix m(rows, cols, fs);
    for (int i = 0; i < rows; ++i) {
        const json& row = j[static_cast<std::size_t>(i)];
        std::string rpath = path + "[" + std::to_string(i) + "]";
        if (!row.is_array()) fail(rpath, "expected an array of scalar strings");
        if (static_cast<int>(row.size()) != cols)
            fail(rpath,
                 "expected " + std::to_string(cols) + " entries, got " + std::to_string(row.size()));
        for (int c = 0; c < cols; ++c) {
            const json& cell = row[static_cast<std::size_t>(c)];
            std::string cpath = rpath + "[" + std::to_string(c) + "]";
            if (!cell.is_string()) fail(cpath, "scalars must be strings");
            try {
                m(i, c) = scalar::parse(cell.get<std::string>(), fs);
            } catch (const std::invalid_argument& e) {
                fail(cpath, e.what());
            }
        }
    }
    return m;
}

std::vector<int> dims_from_json(const json& j, int n, const std::string& path) {
    if (!j.is_array() || static_cast<int>(j.size()) != n)
        fail(path, "expected an array of " + std::to_string(n) + " dimensions");
    std::vector<int> dims;
    for (int x = 0; x < n; ++x)
        dims.push_back(static_cast<int>(
            integer_at(j[static_cast<std::size_t>(x)], path + "[" + std::to_string(x) + "]", 0,
                       1 << 20)));
    return dims;
}

json header_json(const field_spec& fs, int n, const std::vector<int>& dims) {
    json j;
    j["field"] = field_to_json(fs);
    j["n"] = n;
    j["dims"] = dims;
    return j;
}

}  // namespace

representation parse_instance(const std::string& text) {
    json j = parse_document(text);
    if (!j.is_object()) fail("instance", "expected an object");
    reject_unknown_keys(j, {"field", "n", "orientation", "dims", "maps"}, "instance");
    field_spec fs = field_from_json(member(j, "field", "instance"), "field");
    int n = static_cast<int>(integer_at(member(j, "n", "instance"), "n", 1, 1 << 20));

    const json& jo = member(j, "orientation", "instance");
    if (!jo.is_array() || static_cast<int>(jo.size()) != n - 1)
        fail("orientation", "expected an array of " + std::to_string(n - 1) + " tokens");
    std::vector<arrow_dir> dirs;
    for (int e = 0; e < n - 1; ++e) {
        const json& tok = jo[static_cast<std::size_t>(e)];
        std::string tpath = "orientation[" + std::to_string(e) + "]";
        if (!tok.is_string()) fail(tpath, "expected \"f\" or \"b\"");
        std::string t = tok.get<std::string>();
        if (t == "f")
            dirs.push_back(arrow_dir::forward);
        else if (t == "b")
            dirs.push_back(arrow_dir::backward);
        else
            fail(tpath, "expected \"f\" or \"b\", got \"" + t + "\"");
    }
    orientation o(n, std::move(dirs));

    std::vector<int> dims = dims_from_json(member(j, "dims", "instance"), n, "dims");

    const json& jm = member(j, "maps", "instance");
    if (!jm.is_array() || static_cast<int>(jm.size()) != n - 1)
        fail("maps", "expected an array of " + std::to_string(n - 1) + " matrices");
    std::vector<matrix> maps;
    for (int e = 1; e < n; ++e) {
        int rows = dims[o.arrow_target(e) - 1];
        int cols = dims[o.arrow_source(e) - 1];
        maps.push_back(matrix_from_json(jm[static_cast<std::size_t>(e - 1)], rows, cols, fs,
                                        "maps[" + std::to_string(e - 1) + "]"));
    }
    return representation(std::move(o), std::move(dims), std::move(maps), fs);
}

std::string emit_instance(const representation& r) {
    json j = header_json(r.field(), r.n(), r.dims());
    json jo = json::array();
    for (int e = 1; e < r.n(); ++e)
        jo.push_back(r.orient().dir(e) == arrow_dir::forward ? "f" : "b");
    j["orientation"] = std::move(jo);
    json jm = json::array();
    for (int e = 1; e < r.n(); ++e) jm.push_back(matrix_to_json(r.map(e)));
    j["maps"] = std::move(jm);
    return j.dump(2) + "\n";
}

std::string emit_certificate(const representation& r, const decomposition& d) {
    json j = header_json(r.field(), r.n(), r.dims());

    json jb = json::array();
    for (const auto& [iv, m] : d.bars.items)
        if (m != 0) jb.push_back(json::array({iv.a, iv.b, m}));
    j["barcode"] = std::move(jb);

    json jp = json::array();
    for (const matrix& p : d.base_change) jp.push_back(matrix_to_json(p));
    j["base_change"] = std::move(jp);

    j["column_tags"] = d.column_tags;

    std::vector<interval> by_id(d.summands.size(), interval{0, 0});
    for (const auto& s : d.summands) {
        if (s.id < 0 || s.id >= static_cast<int>(by_id.size()))
            throw std::invalid_argument("emit_certificate: summand ids are not 0..k-1");
        by_id[static_cast<std::size_t>(s.id)] = s.iv;
    }
    json js = json::array();
    for (const interval& iv : by_id) js.push_back(json::array({iv.a, iv.b}));
    j["summands"] = std::move(js);

    return j.dump(2) + "\n";
}

certificate_file parse_certificate(const std::string& text) {
    json j = parse_document(text);
    if (!j.is_object()) fail("certificate", "expected an object");
    reject_unknown_keys(
        j, {"field", "n", "dims", "barcode", "base_change", "column_tags", "summands"},
        "certificate");
    certificate_file out;
    out.field = field_from_json(member(j, "field", "certificate"), "field");
    out.n = static_cast<int>(integer_at(member(j, "n", "certificate"), "n", 1, 1 << 20));
    out.dims = dims_from_json(member(j, "dims", "certificate"), out.n, "dims");

    const json& jb = member(j, "barcode", "certificate");
    if (!jb.is_array()) fail("barcode", "expected an array of [a, b, multiplicity] triples");
    out.decomp.bars.n = out.n;
    for (std::size_t i = 0; i < jb.size(); ++i) {
        const json& t = jb[i];
        std::string tpath = "barcode[" + std::to_string(i) + "]";
        if (!t.is_array() || t.size() != 3) fail(tpath, "expected [a, b, multiplicity]");
        int a = static_cast<int>(integer_at(t[0], tpath + "[0]", 1, out.n));
        int b = static_cast<int>(integer_at(t[1], tpath + "[1]", 1, out.n));
        long long m = integer_at(t[2], tpath + "[2]", 1, 1LL << 40);
        try {
            out.decomp.bars.add({a, b}, m);
        } catch (const std::invalid_argument& e) {
            fail(tpath, e.what());
        }
    }

    const json& jp = member(j, "base_change", "certificate");
    if (!jp.is_array() || static_cast<int>(jp.size()) != out.n)
        fail("base_change", "expected one matrix per vertex");
    for (int x = 1; x <= out.n; ++x) {
        int d = out.dims[static_cast<std::size_t>(x) - 1];
        out.decomp.base_change.push_back(
            matrix_from_json(jp[static_cast<std::size_t>(x - 1)], d, d, out.field,
                             "base_change[" + std::to_string(x - 1) + "]"));
    }

    const json& jt = member(j, "column_tags", "certificate");
    if (!jt.is_array() || static_cast<int>(jt.size()) != out.n)
        fail("column_tags", "expected one tag list per vertex");
    for (int x = 0; x < out.n; ++x) {
        const json& tags = jt[static_cast<std::size_t>(x)];
        std::string tpath = "column_tags[" + std::to_string(x) + "]";
        if (!tags.is_array() || static_cast<int>(tags.size()) != out.dims[static_cast<std::size_t>(x)])
            fail(tpath, "expected one tag per fiber dimension");
        std::vector<int> row;
        for (std::size_t i = 0; i < tags.size(); ++i)
            row.push_back(static_cast<int>(
                integer_at(tags[i], tpath + "[" + std::to_string(i) + "]", 0, 1 << 30)));
        out.decomp.column_tags.push_back(std::move(row));
    }

    const json& js = member(j, "summands", "certificate");
    if (!js.is_array()) fail("summands", "expected an array of [a, b] pairs");
    for (std::size_t i = 0; i < js.size(); ++i) {
        const json& p = js[i];
        std::string ppath = "summands[" + std::to_string(i) + "]";
        if (!p.is_array() || p.size() != 2) fail(ppath, "expected [a, b]");
        int a = static_cast<int>(integer_at(p[0], ppath + "[0]", 1, out.n));
        int b = static_cast<int>(integer_at(p[1], ppath + "[1]", 1, out.n));
        out.decomp.summands.push_back({static_cast<int>(i), {a, b}});
    }
    return out;
}

std::optional<std::string> check_certificate(const representation& r, const certificate_file& c) {
    if (c.field != r.field()) return "certificate names field " + c.field.str() +
                                     " but the instance is over " + r.field().str();
    if (c.n != r.n()) return "certificate is for n=" + std::to_string(c.n) +
                             " but the instance has n=" + std::to_string(r.n());
    if (c.dims != r.dims()) return std::optional<std::string>("certificate dims differ from the instance");
    return check_decomposition(r, c.decomp);
}

std::string barcode_text(const barcode& bc) {
    std::ostringstream os;
    for (const auto& [iv, m] : bc.items)
        if (m != 0) os << iv.a << ' ' << iv.b << ' ' << m << '\n';
    return os.str();
}

filtration_input parse_filtrations(const std::string& text) {
    json j = parse_document(text);
    if (!j.is_object()) fail("filtrations", "expected an object");
    reject_unknown_keys(j, {"field", "dim", "chain1", "chain2"}, "filtrations");
    filtration_input out;
    out.field = field_from_json(member(j, "field", "filtrations"), "field");
    out.dim = static_cast<int>(integer_at(member(j, "dim", "filtrations"), "dim", 0, 1 << 20));
    for (const char* name : {"chain1", "chain2"}) {
        const json& jc = member(j, name, "filtrations");
        if (!jc.is_array()) fail(name, "expected an array of spanning-set matrices");
        std::vector<matrix>& chain = (std::string(name) == "chain1") ? out.chain1 : out.chain2;
        for (std::size_t i = 0; i < jc.size(); ++i) {
            const json& jmat = jc[i];
            std::string mpath = std::string(name) + "[" + std::to_string(i) + "]";
            if (!jmat.is_array()) fail(mpath, "expected an array of rows");
            if (static_cast<int>(jmat.size()) != out.dim)
                fail(mpath, "expected " + std::to_string(out.dim) + " rows");
            int cols = 0;
            if (out.dim > 0) {
                const json& first = jmat[0];
                if (!first.is_array()) fail(mpath + "[0]", "expected an array of scalar strings");
                cols = static_cast<int>(first.size());
            }
            chain.push_back(matrix_from_json(jmat, out.dim, cols, out.field, mpath));
        }
        // nesting check: every spanning set must lie inside the next one
        for (std::size_t i = 0; i + 1 < chain.size(); ++i) {
            if (rank(hcat(chain[i], chain[i + 1])) != rank(chain[i + 1]))
                fail(std::string(name) + "[" + std::to_string(i) + "]",
                     "not contained in " + std::string(name) + "[" + std::to_string(i + 1) + "]");
        }
    }
    return out;
}

std::string emit_filtrations(const filtration_input& f) {
    json j;
    j["field"] = field_to_json(f.field);
    j["dim"] = f.dim;
    for (const char* name : {"chain1", "chain2"}) {
        const std::vector<matrix>& chain = (std::string(name) == "chain1") ? f.chain1 : f.chain2;
        json jc = json::array();
        for (const matrix& m : chain) jc.push_back(matrix_to_json(m));
        j[name] = std::move(jc);
    }
    return j.dump(2) + "\n";
}

refined_basis refine_filtrations(const filtration_input& f) {
    const field_spec& fs = f.field;
    int m1 = static_cast<int>(f.chain1.size());
    int m2 = static_cast<int>(f.chain2.size());
    int n = m1 + m2 + 1;
    int omega = m1 + 1;

    std::vector<subspace> bases1, bases2;
    for (const matrix& s : f.chain1) {
        if (s.rows() != f.dim)
            throw parse_error("chain1 spanning set does not live in the ambient space");
        bases1.push_back(image_basis(s));
    }
    for (const matrix& s : f.chain2) {
        if (s.rows() != f.dim)
            throw parse_error("chain2 spanning set does not live in the ambient space");
        bases2.push_back(image_basis(s));
    }

    auto inclusion = [&](const subspace& small, const subspace& big, const std::string& where) {
        auto x = solve(big.basis(), small.basis());
        if (!x) throw parse_error(where);
        return std::move(*x);
    };

    std::vector<arrow_dir> dirs;
    std::vector<int> dims;
    for (int i = 1; i <= m1; ++i) {
        dirs.push_back(arrow_dir::forward);
        dims.push_back(bases1[static_cast<std::size_t>(i) - 1].dim());
    }
    dims.push_back(f.dim);
    for (int t = 1; t <= m2; ++t) {
        dirs.push_back(arrow_dir::backward);
        dims.push_back(bases2[static_cast<std::size_t>(m2 - t)].dim());
    }

    std::vector<matrix> maps;
    for (int e = 1; e <= m1 - 1; ++e)
        maps.push_back(inclusion(bases1[static_cast<std::size_t>(e) - 1],
                                 bases1[static_cast<std::size_t>(e)],
                                 "chain1[" + std::to_string(e - 1) + "] is not contained in chain1[" +
                                     std::to_string(e) + "]"));
    if (m1 >= 1) maps.push_back(bases1[static_cast<std::size_t>(m1) - 1].basis());
    if (m2 >= 1) maps.push_back(bases2[static_cast<std::size_t>(m2) - 1].basis());
    for (int t = 1; t <= m2 - 1; ++t) {
        int j_small = m2 - t;
        maps.push_back(inclusion(bases2[static_cast<std::size_t>(j_small) - 1],
                                 bases2[static_cast<std::size_t>(j_small)],
                                 "chain2[" + std::to_string(j_small - 1) +
                                     "] is not contained in chain2[" + std::to_string(j_small) +
                                     "]"));
    }

    representation rep(orientation(n, std::move(dirs)), std::move(dims), std::move(maps), fs);
    decomposition d = decompose(rep);
    auto err = check_decomposition(rep, d);
    if (err) throw verify_error("refine_filtrations: " + *err);

    refined_basis out{d.base_change[static_cast<std::size_t>(omega) - 1], {}, {}};
    for (int j = 0; j < f.dim; ++j) {
        int id = d.column_tags[static_cast<std::size_t>(omega) - 1][static_cast<std::size_t>(j)];
        interval iv = d.summands[static_cast<std::size_t>(id)].iv;
        out.chain1_from.push_back(iv.a <= m1 ? iv.a : 0);
        out.chain2_from.push_back(iv.b >= omega + 1 ? m2 + 1 - (iv.b - omega) : 0);
    }

    // exact re-check: for each subspace, the vectors claimed inside it
    // belong to it and span it
    auto recheck = [&](const std::vector<subspace>& bases, const std::vector<int>& from,
                       const char* label) {
        for (int i = 1; i <= static_cast<int>(bases.size()); ++i) {
            const subspace& u = bases[static_cast<std::size_t>(i) - 1];
            std::vector<int> claimed;
            for (int j = 0; j < f.dim; ++j)
                if (from[static_cast<std::size_t>(j)] != 0 && from[static_cast<std::size_t>(j)] <= i)
                    claimed.push_back(j);
            for (int j : claimed)
                if (!u.contains(out.basis.column(j)))
                    throw verify_error("basis vector " + std::to_string(j) + " claimed inside " +
                                       label + "[" + std::to_string(i - 1) + "] lies outside it");
            matrix stack = take_columns(out.basis, claimed);
            if (static_cast<int>(claimed.size()) != u.dim() || rank(stack) != u.dim())
                throw verify_error(std::string(label) + "[" + std::to_string(i - 1) +
                                   "] is not spanned by the vectors claimed inside it");
        }
    };
    recheck(bases1, out.chain1_from, "chain1");
    recheck(bases2, out.chain2_from, "chain2");
    return out;
}

std::string refinement_report(const refined_basis& rb, int m1, int m2) {
    std::ostringstream os;
    for (int j = 0; j < rb.basis.cols(); ++j) {
        for (int i = 0; i < rb.basis.rows(); ++i) {
            if (i) os << ' ';
            os << rb.basis(i, j).str();
        }
        os << " |";
        int f1 = rb.chain1_from[static_cast<std::size_t>(j)];
        if (f1 == 0)
            os << " -";
        else
            for (int i = f1; i <= m1; ++i) os << " U" << i;
        os << " |";
        int f2 = rb.chain2_from[static_cast<std::size_t>(j)];
        if (f2 == 0)
            os << " -";
        else
            for (int i = f2; i <= m2; ++i) os << " U'" << i;
        os << '\n';
    }
    return os.str();
}

}  // namespace anq
