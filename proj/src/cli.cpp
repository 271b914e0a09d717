#include "blockpart/cli.hpp"

#include "blockpart/blocking.hpp"
#include "blockpart/gfp.hpp"
#include "blockpart/identities.hpp"
#include "blockpart/normalizers.hpp"
#include "blockpart/simulate.hpp"
#include "blockpart/standup.hpp"

#include <CLI11.hpp>

#include <iomanip>
#include <sstream>

namespace blockpart {

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char ch : s) {
        if (ch == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(ch);
        }
    }
    out.push_back(cur);
    return out;
}

std::vector<long long> parse_list(const std::string& s) {
    std::vector<long long> out;
    if (s.empty()) return out;
    for (const std::string& part : split(s, ','))
        out.push_back(std::stoll(part));
    return out;
}

std::vector<int> parse_int_list(const std::string& s) {
    std::vector<int> out;
    for (long long v : parse_list(s)) out.push_back(static_cast<int>(v));
    return out;
}

std::string gfp_plain(const Gfp& g) {
    std::ostringstream os;
    os << "(";
    for (size_t i = 0; i < g.top.size(); ++i) os << (i ? " " : "") << g.top[i];
    os << " ; ";
    for (size_t i = 0; i < g.bottom.size(); ++i) os << (i ? " " : "") << g.bottom[i];
    os << ")";
    return os.str();
}

// "n,coeff" rows of a univariate rational sequence, n = 0..order.
void print_rational_rows(std::ostream& out, const std::vector<Rat>& c) {
    for (size_t n = 0; n < c.size(); ++n)
        out << n << "," << rational_to_string(c[n]) << "\n";
}

// CSV of a two-variable series: "n,m,coeff" per stored term.
void print_bivariate(std::ostream& out, const TruncatedSeries& s) {
    for (const auto& [mono, c] : s.terms())
        out << mono.dq << "," << mono.dt << "," << c << "\n";
}

struct NamedSeries {
    std::string id;
    TruncatedSeries series{0};
    bool bivariate = false;  // second CSV column is the t-exponent
    std::string meta;        // extra JSON fields, with leading comma
};

// Shared builder behind `sequence` and `expand`.
NamedSeries build_series(const std::string& id, long long order, long long offset) {
    NamedSeries out;
    out.id = id;
    std::vector<std::string> parts = split(id, ':');
    auto meta_of = [](const NormalizerSeries& ns) {
        std::ostringstream os;
        os << ",\"space\":" << ns.space << ",\"depth_used\":" << ns.depth_used
           << ",\"stabilized\":" << (ns.stabilized ? "true" : "false");
        return os.str();
    };
    if (parts[0] == "s_even" || parts[0] == "s_odd") {
        NormalizerSeries ns = parts[0] == "s_even" ? s_even(order) : s_odd(order);
        out.series = ns.series;
        out.bivariate = true;
        out.meta = meta_of(ns);
        return out;
    }
    if (parts[0] == "s_k") {
        if (parts.size() != 3) throw std::invalid_argument("sequence id s_k:<k>:<m>");
        NormalizerSeries ns = s_k(std::stoi(parts[1]), std::stoi(parts[2]), order);
        out.series = ns.series;
        out.meta = meta_of(ns);
        return out;
    }
    if (parts[0] == "gfp") {
        int k_rep = parts.size() > 1 ? std::stoi(parts[1]) : 2;
        out.series = gf_enumerated(offset, k_rep, order);
        out.bivariate = true;  // t-degree counts distinct parts
        return out;
    }
    throw std::invalid_argument("unknown series id: " + id);
}

IdentityReport dispatch_identity(const std::string& id, long long order, long long zwindow) {
    std::vector<std::string> parts = split(id, ':');
    auto pick = [](long long v, long long dflt) { return v > 0 ? v : dflt; };
    if (parts[0] == "main") return check_main(pick(order, 10), pick(zwindow, 6));
    if (parts[0] == "jacobi") return check_jacobi(pick(order, 12), pick(zwindow, 8));
    if (parts[0] == "asep") return check_asep(pick(order, 20), pick(zwindow, 6));
    if (parts[0] == "three-state") return check_three_state(pick(order, 8), pick(zwindow, 6));
    if (parts[0] == "two-exclusion") return check_two_exclusion(pick(order, 8), pick(zwindow, 6));
    if (parts[0] == "k-exclusion" && parts.size() == 2)
        return check_k_exclusion(std::stoi(parts[1]), pick(order, 8), pick(zwindow, 5));
    if (parts[0] == "offset-law" && parts.size() == 3)
        return check_offset_law(std::stoi(parts[1]), std::stoll(parts[2]), pick(order, 10));
    if (parts[0] == "products") return check_phi_products(pick(order, 10));
    throw std::invalid_argument("unknown identity id: " + id);
}

RateTable dispatch_model(const std::string& id, const Rat& q, const Rat& gamma) {
    std::vector<std::string> parts = split(id, ':');
    if (parts[0] == "asep") return asep_q1_table(q);
    if (parts[0] == "three-state") return three_state_table(q, gamma);
    if (parts[0] == "k-exclusion" && parts.size() == 2)
        return k_exclusion_table(q, std::stoi(parts[1]));
    throw std::invalid_argument("unknown model id: " + id);
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"exact verification, enumeration and simulation of blocking-measure particle systems"};
    app.require_subcommand(1);

    // verify
    std::string v_id;
    long long v_order = 0, v_zwindow = 0;
    bool v_json = false;
    CLI::App* verify = app.add_subcommand("verify", "check a formal-series identity exactly");
    verify->add_option("id", v_id,
                       "main | jacobi | asep | three-state | two-exclusion | k-exclusion:<k> | "
                       "offset-law:<k>:<k'> | products")
        ->required();
    verify->add_option("--order", v_order, "q-truncation order (0 = per-identity default)");
    verify->add_option("--zwindow", v_zwindow, "z-exponent window (0 = default)");
    verify->add_flag("--json", v_json, "emit the full report as JSON");

    // sequence
    std::string q_id, q_tsq;
    long long q_order = 8, q_offset = 0;
    bool q_json = false;
    CLI::App* sequence = app.add_subcommand("sequence", "coefficient sequences as CSV");
    sequence->add_option("id", q_id, "s_even | s_odd | s_k:<k>:<m> | gfp[:<k>]")->required();
    sequence->add_option("--order", q_order, "top weight included");
    sequence->add_option("--offset", q_offset, "row-length offset for gfp");
    sequence->add_option("--tsq", q_tsq, "evaluate t^2 at this rational, collapsing to n,coeff");
    sequence->add_flag("--json", q_json, "emit JSON instead of CSV");

    // expand
    std::string x_id;
    long long x_order = 8, x_offset = 0;
    bool x_csv = false;
    CLI::App* expand = app.add_subcommand("expand", "full series expansion, JSON by default");
    expand->add_option("id", x_id, "s_even | s_odd | s_k:<k>:<m> | gfp[:<k>]")->required();
    expand->add_option("--order", x_order, "top weight included");
    expand->add_option("--offset", x_offset, "row-length offset for gfp");
    expand->add_flag("--csv", x_csv, "emit CSV rows instead of JSON");

    // enumerate
    std::string e_id;
    long long e_n = 4, e_offset = 0, e_order = 4;
    int e_k = 2, e_m = 0;
    bool e_json = false;
    CLI::App* enumerate_cmd = app.add_subcommand("enumerate", "list combinatorial objects");
    enumerate_cmd->add_option("id", e_id, "gfp | states")->required();
    enumerate_cmd->add_option("--n", e_n, "array weight (gfp)");
    enumerate_cmd->add_option("--offset", e_offset, "row-length offset (gfp)");
    enumerate_cmd->add_option("--k", e_k, "repetition bound / occupancy bound");
    enumerate_cmd->add_option("--m", e_m, "gap-state class (states)");
    enumerate_cmd->add_option("--order", e_order, "maximum state weight (states)");
    enumerate_cmd->add_flag("--json", e_json, "one JSON object per line");

    // biject
    std::string b_id, b_omega, b_occ, b_top, b_bottom, b_class;
    long long b_lo = 1, b_n = 0, b_l = 0;
    int b_k = 2, b_m = 0;
    bool b_json = false;
    CLI::App* biject = app.add_subcommand("biject", "apply one of the bijections to an explicit state");
    biject->add_option("id", b_id, "psi | phi | standup | laydown")->required();
    biject->add_option("--omega", b_omega, "gap values omega_{-1},omega_{-2},... as CSV");
    biject->add_option("--occ", b_occ, "window occupancies as CSV (standup)");
    biject->add_option("--top", b_top, "top row as CSV (phi)");
    biject->add_option("--bottom", b_bottom, "bottom row as CSV (phi)");
    biject->add_option("--class", b_class, "even | odd shorthand for --k 2 --m 0/1");
    biject->add_option("--k", b_k, "occupancy / repetition bound");
    biject->add_option("--m", b_m, "gap-state class");
    biject->add_option("--lo", b_lo, "first explicit site (standup)");
    biject->add_option("--n", b_n, "conserved charge (laydown)");
    biject->add_option("--l", b_l, "offset shift steps (phi)");
    biject->add_flag("--json", b_json, "emit JSON");

    // simulate
    std::string s_model = "asep", s_q = "1/2", s_gamma = "1/2";
    long long s_window = 8, s_total = -1, s_horizon = 1000000, s_seed = 1;
    int s_batches = 20;
    bool s_json = false;
    CLI::App* simulate = app.add_subcommand("simulate", "frozen-window continuous-time simulation");
    simulate->add_option("--model", s_model, "asep | three-state | k-exclusion:<k>");
    simulate->add_option("--q", s_q, "asymmetry parameter, rational");
    simulate->add_option("--gamma", s_gamma, "three-state annihilation parameter, rational");
    simulate->add_option("--window", s_window, "number of sites");
    simulate->add_option("--total", s_total, "conserved particle count (-1 = half filling)");
    simulate->add_option("--horizon", s_horizon, "number of jumps");
    simulate->add_option("--seed", s_seed, "PRNG seed");
    simulate->add_option("--batches", s_batches, "batch count for error bars");
    simulate->add_flag("--json", s_json, "emit JSON instead of CSV");

    std::vector<const char*> argv;
    argv.push_back("blockpart");
    for (const std::string& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << e.what() << "\n";
        return 2;
    }

    try {
        if (verify->parsed()) {
            IdentityReport r = dispatch_identity(v_id, v_order, v_zwindow);
            if (v_json)
                out << r.to_json() << "\n";
            else
                out << r.id << ": " << (r.equal ? "equal" : "NOT EQUAL") << " (order " << r.order
                    << ", z-window " << r.z_window << ")"
                    << (r.discrepancy.empty() ? "" : " " + r.discrepancy) << "\n";
            return r.equal ? 0 : 1;
        }

        if (sequence->parsed() || expand->parsed()) {
            bool is_seq = sequence->parsed();
            NamedSeries ns = build_series(is_seq ? q_id : x_id, is_seq ? q_order : x_order,
                                          is_seq ? q_offset : x_offset);
            bool want_csv = is_seq ? !q_json : x_csv;
            if (is_seq && !q_tsq.empty()) {
                if (!ns.bivariate) throw std::invalid_argument("--tsq only applies to t-graded series");
                Rat v = parse_rational(q_tsq);
                std::vector<Rat> row(static_cast<size_t>(ns.series.order() + 1), Rat(0));
                for (const auto& [mono, c] : ns.series.terms()) {
                    if (mono.dt % 2 != 0)
                        throw std::invalid_argument("odd t-exponent, cannot evaluate at t^2");
                    row[static_cast<size_t>(mono.dq)] += Rat(c) * pow_rat(v, mono.dt / 2);
                }
                print_rational_rows(out, row);
            } else if (want_csv) {
                if (ns.bivariate) {
                    print_bivariate(out, ns.series);
                } else {
                    std::vector<Rat> row(static_cast<size_t>(ns.series.order() + 1), Rat(0));
                    for (const auto& [mono, c] : ns.series.terms())
                        row[static_cast<size_t>(mono.dq)] += Rat(c);
                    print_rational_rows(out, row);
                }
            } else {
                out << "{\"id\":\"" << ns.id << "\",\"order\":" << ns.series.order() << ns.meta
                    << ",\"series\":" << ns.series.to_json() << "}\n";
            }
            return 0;
        }

        if (enumerate_cmd->parsed()) {
            if (e_id == "gfp") {
                for (const Gfp& g : enumerate(e_n, e_offset, e_k))
                    out << (e_json ? g.to_json() : gfp_plain(g)) << "\n";
                return 0;
            }
            if (e_id == "states") {
                for (const OmegaState& w : enumerate_gap_states(e_k, e_m, e_order)) {
                    if (e_json) {
                        out << w.to_json() << "\n";
                    } else {
                        for (size_t i = 0; i < w.vals.size(); ++i) out << (i ? "," : "") << w.vals[i];
                        out << "\n";
                    }
                }
                return 0;
            }
            throw std::invalid_argument("unknown enumerate id: " + e_id);
        }

        if (biject->parsed()) {
            if (!b_class.empty()) {
                b_k = 2;
                if (b_class == "even")
                    b_m = 0;
                else if (b_class == "odd")
                    b_m = 1;
                else
                    throw std::invalid_argument("--class must be even or odd");
            }
            if (b_id == "psi" || b_id == "laydown") {
                OmegaState w;
                w.k = b_k;
                w.m = b_m;
                w.vals = parse_list(b_omega);
                w.canonicalize();
                if (!w.no_zero_run()) throw std::invalid_argument("omega has a forbidden zero run");
                if (b_id == "psi") {
                    Gfp g = psi(w);
                    out << (b_json ? g.to_json() : gfp_plain(g)) << "\n";
                } else {
                    EtaState eta = lay_down(w, b_n);
                    out << eta.to_json(b_n) << "\n";
                }
                return 0;
            }
            if (b_id == "standup") {
                EtaState eta;
                eta.k = b_k;
                eta.lo = b_lo;
                eta.occ = parse_int_list(b_occ);
                eta.canonicalize();
                out << stand_up(eta).to_json() << "\n";
                return 0;
            }
            if (b_id == "phi") {
                Gfp g;
                g.k_rep = b_k;
                g.top = parse_list(b_top);
                g.bottom = parse_list(b_bottom);
                g.offset = static_cast<long long>(g.top.size()) -
                           static_cast<long long>(g.bottom.size());
                if (!g.valid()) throw std::invalid_argument("rows do not form a valid array");
                Gfp h = phi(g, b_l);
                out << (b_json ? h.to_json() : gfp_plain(h)) << "\n";
                return 0;
            }
            throw std::invalid_argument("unknown biject id: " + b_id);
        }

        if (simulate->parsed()) {
            RateTable table = dispatch_model(s_model, parse_rational(s_q), parse_rational(s_gamma));
            if (s_total < 0) s_total = s_window * table.k / 2;
            SimulationResult sim =
                simulate_window(table, 0, static_cast<int>(s_window), static_cast<int>(s_total),
                                static_cast<std::uint64_t>(s_seed), s_horizon, s_batches);
            std::vector<double> exact = product_occupation(table, 0, static_cast<int>(s_window),
                                                           static_cast<int>(s_total), 0);
            out << std::setprecision(12);
            if (s_json) {
                out << "{\"model\":\"" << s_model << "\",\"seed\":" << s_seed
                    << ",\"jumps\":" << sim.jumps << ",\"total_time\":" << sim.total_time
                    << ",\"sites\":[";
                for (size_t j = 0; j < sim.site_mean.size(); ++j)
                    out << (j ? "," : "") << "{\"site\":" << j << ",\"mean\":" << sim.site_mean[j]
                        << ",\"sigma\":" << sim.site_sigma[j] << ",\"exact\":" << exact[j] << "}";
                out << "]}\n";
            } else {
                out << "site,mean,sigma,exact\n";
                for (size_t j = 0; j < sim.site_mean.size(); ++j)
                    out << j << "," << sim.site_mean[j] << "," << sim.site_sigma[j] << ","
                        << exact[j] << "\n";
            }
            return 0;
        }
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
    err << "no subcommand\n";
    return 2;
}

}  // namespace blockpart
