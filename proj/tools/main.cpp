#include <CLI11.hpp>

#include <chrono>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "anq/decompose.hpp"
#include "anq/io.hpp"
#include "anq/oracle.hpp"

using namespace anq;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw parse_error("cannot read " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void spill(const std::string& path, const std::string& text) {
    if (path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw parse_error("cannot write " + path);
    out << text;
}

field_spec parse_field_flag(const std::string& text) {
    if (text == "Q" || text == "q" || text == "rational") return field_spec::rational();
    std::string digits = (!text.empty() && (text[0] == 'F' || text[0] == 'f'))
                             ? text.substr(1)
                             : text;
    if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos)
        throw parse_error("--field expects Q, rational, F<p>, or <p>; got \"" + text + "\"");
    try {
        return field_spec::prime(std::stoull(digits));
    } catch (const std::exception& e) {
        throw parse_error(std::string("--field: ") + e.what());
    }
}

/// "a-b:m,a-b:m,..."; ":m" defaults to 1.
barcode parse_barcode_flag(const std::string& text, int n) {
    barcode bars;
    bars.n = n;
    std::istringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) {
        if (item.empty()) throw parse_error("--barcode: empty entry");
        long long mult = 1;
        std::string span = item;
        if (auto colon = item.find(':'); colon != std::string::npos) {
            span = item.substr(0, colon);
            std::string m = item.substr(colon + 1);
            if (m.empty() || m.find_first_not_of("0123456789") != std::string::npos)
                throw parse_error("--barcode: bad multiplicity in \"" + item + "\"");
            mult = std::stoll(m);
        }
        auto dash = span.find('-');
        if (dash == std::string::npos)
            throw parse_error("--barcode: expected a-b in \"" + item + "\"");
        std::string lo = span.substr(0, dash), hi = span.substr(dash + 1);
        if (lo.empty() || hi.empty() ||
            lo.find_first_not_of("0123456789") != std::string::npos ||
            hi.find_first_not_of("0123456789") != std::string::npos)
            throw parse_error("--barcode: expected a-b in \"" + item + "\"");
        try {
            bars.add({std::stoi(lo), std::stoi(hi)}, mult);
        } catch (const std::invalid_argument& e) {
            throw parse_error(std::string("--barcode: ") + e.what());
        }
    }
    return bars;
}

orientation random_orientation(rng64& rng, int n) {
    std::vector<arrow_dir> dirs;
    for (int e = 0; e + 1 < n; ++e)
        dirs.push_back(rng.below(2) ? arrow_dir::backward : arrow_dir::forward);
    return orientation(n, std::move(dirs));
}

int run_decompose(const std::string& path, const std::string& cert_path, bool verify) {
    representation r = parse_instance(slurp(path));
    decomposition d = decompose(r);
    if (verify) {
        if (auto err = check_decomposition(r, d)) {
            std::cerr << "certificate check failed: " << *err << '\n';
            return 1;
        }
    }
    std::cout << barcode_text(d.bars);
    if (!cert_path.empty()) spill(cert_path, emit_certificate(r, d));
    return 0;
}

int run_verify(const std::string& inst_path, const std::string& cert_path) {
    representation r = parse_instance(slurp(inst_path));
    certificate_file c = parse_certificate(slurp(cert_path));
    if (auto err = check_certificate(r, c)) {
        std::cerr << "certificate check failed: " << *err << '\n';
        return 1;
    }
    std::cout << "ok\n";
    return 0;
}

int run_generate(int n, const std::string& orient_text, const std::string& barcode_text_flag,
                 const std::string& field_text, std::uint64_t seed, int max_dim,
                 const std::string& out_path) {
    field_spec fs = parse_field_flag(field_text);
    rng64 rng(seed);
    orientation o = orient_text.empty() ? random_orientation(rng, n)
                                        : orientation::parse(n, orient_text);
    representation r = [&] {
        if (barcode_text_flag.empty()) return random_instance(o, max_dim, fs, rng.next());
        barcode bars = parse_barcode_flag(barcode_text_flag, n);
        return plant_instance({o, bars, fs, rng.next()}).first;
    }();
    spill(out_path, emit_instance(r));
    return 0;
}

int run_oracle(const std::string& path, int max_n) {
    representation r = parse_instance(slurp(path));
    if (r.n() > max_n)
        throw parse_error("oracle: n=" + std::to_string(r.n()) + " exceeds the bound " +
                          std::to_string(max_n) + " (raise with --max-n)");
    std::cout << barcode_text(multiplicities_via_hom(r));
    return 0;
}

int run_refine(const std::string& path) {
    filtration_input f = parse_filtrations(slurp(path));
    refined_basis rb = refine_filtrations(f);
    std::cout << refinement_report(rb, static_cast<int>(f.chain1.size()),
                                   static_cast<int>(f.chain2.size()));
    return 0;
}

int run_bench(int n, int max_dim, int count, const std::string& field_text, std::uint64_t seed) {
    field_spec fs = parse_field_flag(field_text);
    rng64 rng(seed);
    int passed = 0;
    long long total_dim = 0;
    auto t0 = std::chrono::steady_clock::now();
    for (int i = 0; i < count; ++i) {
        orientation o = random_orientation(rng, n);
        barcode bars;
        bars.n = n;
        for (int tries = 0; tries < 4 * n; ++tries) {
            int a = static_cast<int>(rng.range(1, n));
            int b = static_cast<int>(rng.range(a, n));
            bool fits = true;
            for (int x = a; x <= b; ++x) fits = fits && bars.dim_at(x) < max_dim;
            if (fits) bars.add({a, b});
        }
        auto [r, truth] = plant_instance({o, bars, fs, rng.next()});
        total_dim += r.total_dim();
        decomposition d = decompose(r);
        if (d.bars == truth && !check_decomposition(r, d)) ++passed;
    }
    auto t1 = std::chrono::steady_clock::now();
    double ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
    std::cout << "instances " << count << '\n'
              << "total fiber dimension " << total_dim << '\n'
              << "verified " << passed << '/' << count << '\n'
              << "wall time " << ms << " ms\n";
    return passed == count ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"interval decomposition of representations of A_n quivers"};
    app.require_subcommand(1);

    std::string inst_path, cert_path, out_path = "-";
    std::string orient_text, barcode_flag, field_text = "rational";
    bool verify = false;
    int n = 4, max_dim = 4, max_n = 10, count = 100;
    std::uint64_t seed = 0;

    auto* dec = app.add_subcommand("decompose", "print the barcode of an instance");
    dec->add_option("instance", inst_path, "instance file")->required();
    dec->add_option("--certificate", cert_path, "write the change-of-basis certificate here");
    dec->add_flag("--verify", verify, "re-check the certificate before printing");

    auto* ver = app.add_subcommand("verify", "check a certificate against its instance");
    ver->add_option("instance", inst_path, "instance file")->required();
    ver->add_option("certificate", cert_path, "certificate file")->required();

    auto* gen = app.add_subcommand("generate", "write a random or planted instance");
    gen->add_option("--n", n, "number of vertices")->check(CLI::Range(1, 64));
    gen->add_option("--orientation", orient_text, "f/b tokens, e.g. ffb; default random");
    gen->add_option("--barcode", barcode_flag, "plant these bars, e.g. 1-4:1,2-3:2");
    gen->add_option("--field", field_text, "Q, rational, F<p>, or <p>");
    gen->add_option("--seed", seed, "random seed");
    gen->add_option("--max-dim", max_dim, "dimension cap for random instances")
        ->check(CLI::Range(0, 64));
    gen->add_option("--out", out_path, "output path, - for stdout");

    auto* ora = app.add_subcommand("oracle", "print the barcode via the hom-counting oracle");
    ora->add_option("instance", inst_path, "instance file")->required();
    ora->add_option("--max-n", max_n, "refuse instances larger than this");

    auto* ref = app.add_subcommand("refine", "compatible basis for two filtrations");
    ref->add_option("filtrations", inst_path, "filtration file")->required();

    auto* ben = app.add_subcommand("bench", "decompose planted instances and time it");
    ben->add_option("--n", n, "number of vertices")->check(CLI::Range(1, 64));
    ben->add_option("--dim", max_dim, "per-vertex dimension cap")->check(CLI::Range(1, 256));
    ben->add_option("--count", count, "number of instances")->check(CLI::Range(0, 1000000));
    ben->add_option("--field", field_text, "Q, rational, F<p>, or <p>");
    ben->add_option("--seed", seed, "random seed");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (dec->parsed()) return run_decompose(inst_path, cert_path, verify);
        if (ver->parsed()) return run_verify(inst_path, cert_path);
        if (gen->parsed())
            return run_generate(n, orient_text, barcode_flag, field_text, seed, max_dim, out_path);
        if (ora->parsed()) return run_oracle(inst_path, max_n);
        if (ref->parsed()) return run_refine(inst_path);
        if (ben->parsed()) return run_bench(n, max_dim, count, field_text, seed);
    } catch (const verify_error& e) {
        std::cerr << e.what() << '\n';
        return 1;
    } catch (const parse_error& e) {
        std::cerr << e.what() << '\n';
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
