// Command-line front end: evaluate the discrete Appell functions and their
// relatives, run the identity suites, check the integral representations,
// and emit value tables.

#include <cstdio>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "dappell/identities.hpp"
#include "dappell/report.hpp"

namespace {

using namespace dappell;

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitDivergence = 2;
constexpr int kExitUsage = 64;

// complex literals: "re" or "re+imi", e.g. 1.5, 1.5+0.5i, -2e-3-0.25i
cplx parse_complex(const std::string& raw, const std::string& key)
{
    std::string s;
    for (char ch : raw)
        if (!std::isspace(static_cast<unsigned char>(ch)))
            s += ch;
    if (s.empty())
        throw CLI::ValidationError(key, "empty value");
    auto to_double = [&](const std::string& part) {
        if (part.empty() || part == "+")
            return 1.0;
        if (part == "-")
            return -1.0;
        size_t used = 0;
        const double v = std::stod(part, &used);
        if (used != part.size())
            throw CLI::ValidationError(key, "bad numeric literal '" + part + "'");
        return v;
    };
    try {
        if (s.back() != 'i' && s.back() != 'I')
            return {to_double(s), 0.0};
        const std::string body = s.substr(0, s.size() - 1);
        // split at the last sign that is not an exponent sign or leading
        for (size_t i = body.size(); i-- > 1;) {
            if ((body[i] == '+' || body[i] == '-') &&
                body[i - 1] != 'e' && body[i - 1] != 'E') {
                return {to_double(body.substr(0, i)), to_double(body.substr(i))};
            }
        }
        return {0.0, to_double(body)}; // pure imaginary
    } catch (const CLI::ValidationError&) {
        throw;
    } catch (const std::exception&) {
        throw CLI::ValidationError(key, "cannot parse complex literal '" + raw + "'");
    }
}

std::vector<cplx> parse_complex_list(const std::string& raw, const std::string& key)
{
    std::vector<cplx> out;
    std::string cur;
    for (char ch : raw + ",") {
        if (ch == ',') {
            if (!cur.empty())
                out.push_back(parse_complex(cur, key));
            cur.clear();
        } else {
            cur += ch;
        }
    }
    return out;
}

struct ComplexOpt {
    std::string text;
    std::string key;
    bool present() const { return !text.empty(); }
    cplx value() const { return parse_complex(text, key); }
    cplx value_or(cplx fallback) const { return present() ? value() : fallback; }
};

void add_complex(CLI::App* cmd, ComplexOpt& slot, const std::string& flag,
                 const std::string& desc)
{
    slot.key = flag;
    cmd->add_option(flag, slot.text, desc);
}

void require_present(const std::initializer_list<const ComplexOpt*> opts)
{
    for (const ComplexOpt* o : opts)
        if (!o->present())
            throw CLI::RequiredError(o->key);
}

void print_result(const EvalResult& r, bool with_region)
{
    std::printf("value = %.15g %+.15gi\n", r.value.real(), r.value.imag());
    std::printf("verdict = %s\n", to_string(r.verdict).c_str());
    std::printf("terms_summed = %ld\n", r.terms_summed);
    std::printf("tail_estimate = %.3e\n", r.tail_estimate);
    if (with_region)
        std::printf("region = %s\n", to_string(r.region).c_str());
}

int verdict_exit(Verdict v)
{
    switch (v) {
    case Verdict::Converged:
    case Verdict::Terminated:
        return kExitOk;
    case Verdict::DivergenceSuspected:
        return kExitDivergence;
    case Verdict::MaxTermsReached:
        return kExitError;
    }
    return kExitError;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"discrete Appell F1 toolkit"};
    app.require_subcommand(1);

    // ---- eval -------------------------------------------------------------
    auto* eval = app.add_subcommand("eval", "evaluate one function");
    std::string fn;
    eval->add_option("--fn", fn,
                     "f1d1|f1d2|kdf|pfq|f1|2f1|phi1|phi2|phi3")
        ->required();
    ComplexOpt a, b1, b2, c, t1, t2, t, x, y, z;
    long k1 = 0, k2 = 0, k = 0;
    int humbert_form = 1;
    std::string upper, lower, uj, ux, uy, lj, lx, ly;
    add_complex(eval, a, "--a", "joint numerator parameter");
    add_complex(eval, b1, "--b1", "x-axis numerator parameter");
    add_complex(eval, b2, "--b2", "y-axis numerator parameter");
    add_complex(eval, c, "--c", "joint denominator parameter");
    add_complex(eval, t1, "--t1", "x-axis lattice variable");
    add_complex(eval, t2, "--t2", "y-axis lattice variable");
    add_complex(eval, t, "--t", "joint lattice variable");
    add_complex(eval, x, "--x", "first argument");
    add_complex(eval, y, "--y", "second argument");
    add_complex(eval, z, "--z", "single-series argument");
    eval->add_option("--k1", k1, "x-axis step");
    eval->add_option("--k2", k2, "y-axis step");
    eval->add_option("--k", k, "joint step");
    eval->add_option("--form", humbert_form, "Humbert form: 1 or 2")
        ->check(CLI::Range(1, 2));
    eval->add_option("--upper", upper, "comma list of upper parameters (pfq)");
    eval->add_option("--lower", lower, "comma list of lower parameters (pfq)");
    eval->add_option("--upper-joint", uj, "comma list (kdf)");
    eval->add_option("--upper-x", ux, "comma list (kdf)");
    eval->add_option("--upper-y", uy, "comma list (kdf)");
    eval->add_option("--lower-joint", lj, "comma list (kdf)");
    eval->add_option("--lower-x", lx, "comma list (kdf)");
    eval->add_option("--lower-y", ly, "comma list (kdf)");
    double rel_tol = 1e-12;
    long max_diagonal = 2000;
    eval->add_option("--rel-tol", rel_tol, "series relative tolerance");
    eval->add_option("--max-diagonal", max_diagonal, "series diagonal budget");

    // ---- verify -----------------------------------------------------------
    auto* verify = app.add_subcommand("verify", "run the identity suite");
    std::string regime = "terminating";
    int count = 50;
    std::uint64_t seed = 42;
    std::string families_arg = "*";
    std::string output = "plain";
    bool serial = false;
    std::vector<std::string> tol_overrides;
    verify->add_option("--regime", regime, "terminating|classical")
        ->check(CLI::IsMember({"terminating", "classical"}));
    verify->add_option("--count", count, "draws per family")->check(CLI::PositiveNumber);
    verify->add_option("--seed", seed, "draw seed");
    verify->add_option("--families", families_arg,
                       "comma list of family ids ('*' for all, '' for none)");
    verify->add_option("--output", output, "json|csv|plain")
        ->check(CLI::IsMember({"json", "csv", "plain"}));
    verify->add_flag("--serial", serial, "disable the parallel runner");
    verify->add_option("--tol", tol_overrides,
                       "per-family tolerance override Family=value (repeatable)");

    // ---- integral-check ---------------------------------------------------
    auto* ic = app.add_subcommand("integral-check",
                                  "check every integral representation");
    int ic_count = 10;
    std::uint64_t ic_seed = 42;
    bool ic_serial = false;
    ic->add_option("--count", ic_count, "draws per representation")
        ->check(CLI::PositiveNumber);
    ic->add_option("--seed", ic_seed, "draw seed");
    ic->add_flag("--serial", ic_serial, "disable the parallel quadrature");

    // ---- table ------------------------------------------------------------
    auto* table = app.add_subcommand("table", "CSV value table over an (x, y) grid");
    std::string tfn = "f1d1";
    double x0 = 0.0, x1 = 0.0, y0 = 0.0, y1 = 0.0;
    long nx = 1, ny = 1;
    bool t_serial = false;
    ComplexOpt ta, tb1, tb2, tc, tt1, tt2, tt;
    long tk1 = 0, tk2 = 0, tk = 0;
    table->add_option("--fn", tfn, "f1d1|f1d2")
        ->check(CLI::IsMember({"f1d1", "f1d2"}));
    add_complex(table, ta, "--a", "joint numerator parameter");
    add_complex(table, tb1, "--b1", "x-axis numerator parameter");
    add_complex(table, tb2, "--b2", "y-axis numerator parameter");
    add_complex(table, tc, "--c", "joint denominator parameter");
    add_complex(table, tt1, "--t1", "x-axis lattice variable");
    add_complex(table, tt2, "--t2", "y-axis lattice variable");
    add_complex(table, tt, "--t", "joint lattice variable");
    table->add_option("--k1", tk1, "x-axis step");
    table->add_option("--k2", tk2, "y-axis step");
    table->add_option("--k", tk, "joint step");
    table->add_option("--x-min", x0)->required();
    table->add_option("--x-max", x1)->required();
    table->add_option("--x-steps", nx)->required()->check(CLI::PositiveNumber);
    table->add_option("--y-min", y0)->required();
    table->add_option("--y-max", y1)->required();
    table->add_option("--y-steps", ny)->required()->check(CLI::PositiveNumber);
    table->add_flag("--serial", t_serial, "disable the parallel grid");

    // ---- list-identities ----------------------------------------------------
    auto* list = app.add_subcommand("list-identities",
                                    "list identity families and relation catalogues");
    bool list_catalogues = false;
    list->add_flag("--catalogues", list_catalogues,
                   "also print every catalogued relation");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::fflush(stdout);
        std::fprintf(stderr, "%s\n", e.what());
        return kExitUsage;
    }

    try {
        if (eval->parsed()) {
            SeriesOptions opts;
            opts.rel_tol = rel_tol;
            opts.max_diagonal = max_diagonal;
            EvalResult r;
            bool with_region = false;
            if (fn == "f1d1") {
                require_present({&a, &b1, &b2, &c, &t1, &t2, &x, &y});
                Appell1Params p{a.value(), b1.value(), b2.value(), c.value(),
                                t1.value(), t2.value(), k1, k2, x.value(), y.value()};
                r = eval_f1_d1(p, opts);
            } else if (fn == "f1d2") {
                require_present({&a, &b1, &b2, &c, &t, &x, &y});
                Appell2Params p{a.value(), b1.value(), b2.value(), c.value(),
                                t.value(), k, x.value(), y.value()};
                r = eval_f1_d2(p, opts);
            } else if (fn == "kdf") {
                require_present({&x, &y});
                KdFSpec s;
                s.upper_joint = parse_complex_list(uj, "--upper-joint");
                s.upper_x = parse_complex_list(ux, "--upper-x");
                s.upper_y = parse_complex_list(uy, "--upper-y");
                s.lower_joint = parse_complex_list(lj, "--lower-joint");
                s.lower_x = parse_complex_list(lx, "--lower-x");
                s.lower_y = parse_complex_list(ly, "--lower-y");
                r = eval_kdf(s, x.value(), y.value(), opts);
                with_region = true;
            } else if (fn == "pfq") {
                require_present({&t, &z});
                r = eval_discrete_pfq(parse_complex_list(upper, "--upper"),
                                      parse_complex_list(lower, "--lower"), t.value(),
                                      k, z.value(), opts);
            } else if (fn == "f1") {
                require_present({&a, &b1, &b2, &c, &x, &y});
                r = eval_classical_f1(a.value(), b1.value(), b2.value(), c.value(),
                                      x.value(), y.value(), opts);
            } else if (fn == "2f1") {
                require_present({&a, &b1, &c, &z});
                r = eval_2f1(a.value(), b1.value(), c.value(), z.value(), opts);
            } else if (fn == "phi1" || fn == "phi2" || fn == "phi3") {
                const HumbertFamily hf = fn == "phi1"   ? HumbertFamily::Phi1
                                         : fn == "phi2" ? HumbertFamily::Phi2
                                                        : HumbertFamily::Phi3;
                if (humbert_form == 1) {
                    require_present({&a, &b1, &b2, &c, &t1, &t2, &x, &y});
                    Appell1Params p{a.value(), b1.value(), b2.value(), c.value(),
                                    t1.value(), t2.value(), k1, k2, x.value(), y.value()};
                    r = eval_humbert({hf, HumbertForm::First}, p, opts);
                } else {
                    require_present({&a, &b1, &b2, &c, &t, &x, &y});
                    Appell2Params p{a.value(), b1.value(), b2.value(), c.value(),
                                    t.value(), k, x.value(), y.value()};
                    r = eval_humbert({hf, HumbertForm::Second}, p, opts);
                }
            } else {
                std::fprintf(stderr, "--fn: unknown function '%s'\n", fn.c_str());
                return kExitUsage;
            }
            print_result(r, with_region);
            return verdict_exit(r.verdict);
        }

        if (verify->parsed()) {
            DrawPolicy policy;
            policy.regime =
                regime == "classical" ? Regime::Classical : Regime::Terminating;
            policy.count = count;
            policy.seed = seed;
            policy.exec = serial ? ExecPolicy::Serial : ExecPolicy::Parallel;
            for (const std::string& ov : tol_overrides) {
                const auto eq = ov.find('=');
                if (eq == std::string::npos) {
                    std::fprintf(stderr, "--tol: expected Family=value, got '%s'\n",
                                 ov.c_str());
                    return kExitUsage;
                }
                const auto fam = family_from_string(ov.substr(0, eq));
                if (!fam) {
                    std::fprintf(stderr, "--tol: unknown family '%s'\n",
                                 ov.substr(0, eq).c_str());
                    return kExitUsage;
                }
                policy.tolerance_overrides.emplace_back(*fam,
                                                        std::stod(ov.substr(eq + 1)));
            }
            std::vector<IdentityFamily> fams;
            if (families_arg == "*") {
                fams = all_families();
            } else if (!families_arg.empty()) {
                std::string cur;
                for (char ch : families_arg + ",") {
                    if (ch == ',') {
                        if (!cur.empty()) {
                            const auto fam = family_from_string(cur);
                            if (!fam) {
                                std::fprintf(stderr,
                                             "--families: unknown family '%s'\n",
                                             cur.c_str());
                                return kExitUsage;
                            }
                            fams.push_back(*fam);
                        }
                        cur.clear();
                    } else {
                        cur += ch;
                    }
                }
            }
            const Report report = run_suite(policy, fams);
            if (output == "json")
                std::printf("%s\n", report_to_json(report).c_str());
            else if (output == "csv")
                std::printf("%s", report_to_csv(report).c_str());
            else
                std::printf("%s", report_to_plain(report).c_str());
            return report.all_pass() ? kExitOk : kExitError;
        }

        if (ic->parsed()) {
            QuadratureOptions q;
            q.exec = ic_serial ? ExecPolicy::Serial : ExecPolicy::Parallel;
            const auto rows = run_integral_suite(ic_count, ic_seed, q);
            bool ok = true;
            for (const auto& row : rows) {
                std::printf("%-18s %-20s pass %3ld fail %3ld skip %3ld worst %.3e tol %.0e\n",
                            to_string(row.form).c_str(), row.mode.c_str(), row.pass,
                            row.fail, row.skip, row.worst_residual, row.tolerance);
                if (row.fail > 0 || row.pass == 0)
                    ok = false;
            }
            std::printf(ok ? "ALL PASS\n" : "FAILURES PRESENT\n");
            return ok ? kExitOk : kExitError;
        }

        if (table->parsed()) {
            if (std::abs(x0) >= 1.0 || std::abs(x1) >= 1.0 || std::abs(y0) >= 1.0 ||
                std::abs(y1) >= 1.0)
                throw DomainError("table: grid must stay within |x|, |y| < 1");
            require_present({&ta, &tb1, &tb2, &tc});
            const bool second = tfn == "f1d2";
            if (second)
                require_present({&tt});
            else
                require_present({&tt1, &tt2});
            struct Cell {
                double x, y;
                EvalResult r;
                bool diverged = false;
            };
            std::vector<Cell> cells(static_cast<size_t>(nx * ny));
            const ExecPolicy exec = t_serial ? ExecPolicy::Serial : ExecPolicy::Parallel;
            std::exception_ptr error;
#pragma omp parallel for schedule(dynamic) if (exec == ExecPolicy::Parallel)
            for (long idx = 0; idx < nx * ny; ++idx) {
                try {
                    const long ix = idx / ny, iy = idx % ny;
                    const double gx = nx == 1 ? x0 : x0 + (x1 - x0) * ix / (nx - 1);
                    const double gy = ny == 1 ? y0 : y0 + (y1 - y0) * iy / (ny - 1);
                    Cell cell;
                    cell.x = gx;
                    cell.y = gy;
                    if (second) {
                        Appell2Params p{ta.value(), tb1.value(), tb2.value(), tc.value(),
                                        tt.value(), tk, gx, gy};
                        cell.r = eval_f1_d2(p);
                    } else {
                        Appell1Params p{ta.value(), tb1.value(), tb2.value(), tc.value(),
                                        tt1.value(), tt2.value(), tk1, tk2, gx, gy};
                        cell.r = eval_f1_d1(p);
                    }
                    cell.diverged = cell.r.verdict == Verdict::DivergenceSuspected;
                    cells[static_cast<size_t>(idx)] = cell;
                } catch (...) {
#pragma omp critical
                    if (!error)
                        error = std::current_exception();
                }
            }
            if (error)
                std::rethrow_exception(error);
            std::printf("x,y,re,im,verdict\n");
            for (const Cell& cell : cells) {
                if (cell.diverged)
                    std::printf("%.10g,%.10g,,,divergent\n", cell.x, cell.y);
                else
                    std::printf("%.10g,%.10g,%.15g,%.15g,%s\n", cell.x, cell.y,
                                cell.r.value.real(), cell.r.value.imag(),
                                to_string(cell.r.verdict).c_str());
            }
            return kExitOk;
        }

        if (list->parsed()) {
            std::printf("identity families (%zu):\n", all_families().size());
            for (IdentityFamily f : all_families())
                std::printf("  %s\n", to_string(f).c_str());
            const RelationCatalogue cats[] = {
                RelationCatalogue::ContiguousDiff8, RelationCatalogue::RecursionDiff28,
                RelationCatalogue::ContiguousDelta8, RelationCatalogue::RecursionDelta28,
                RelationCatalogue::F2ContiguousDiff8, RelationCatalogue::F2RecursionDiff28,
                RelationCatalogue::F2ContiguousDelta8, RelationCatalogue::F2RecursionDelta22,
            };
            for (RelationCatalogue cat : cats) {
                std::printf("%s (%ld relations)%s\n", to_string(cat).c_str(),
                            catalogue_size(cat), list_catalogues ? ":" : "");
                if (list_catalogues)
                    for (long i = 1; i <= catalogue_size(cat); ++i)
                        std::printf("  %2ld: %s\n", i, relation_description(cat, i).c_str());
            }
            return kExitOk;
        }
    } catch (const CLI::RequiredError& e) {
        std::fprintf(stderr, "%s\n", e.what());
        return kExitUsage;
    } catch (const CLI::ValidationError& e) {
        std::fprintf(stderr, "%s\n", e.what());
        return kExitUsage;
    } catch (const PoleError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitError;
    } catch (const DomainError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitError;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitError;
    }
    return kExitUsage;
}
