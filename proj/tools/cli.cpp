#include "cli.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "inertial.hpp"
#include "parse.hpp"

namespace inertial::cli {

using json = nlohmann::json;

std::optional<std::string> process_env(const std::string& name) {
    const char* v = std::getenv(name.c_str());
    if (!v) return std::nullopt;
    return std::string(v);
}

namespace {

std::string read_arg(const std::string& value) {
    if (value.empty() || value[0] != '@') return value;
    std::ifstream in(value.substr(1));
    if (!in) fail(Errc::invalid_input, "cannot read file '" + value.substr(1) + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

json j_int(const Integer& v) { return v.get_str(); }
json j_rat(const Rational& v) { return to_string(v); }
json j_card(const Cardinal& c) { return c.to_string(); }

template <class T>
json j_matrix(const Matrix<T>& m) {
    json rows = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        json r = json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) r.push_back(to_string(m(i, j)));
        rows.push_back(r);
    }
    return rows;
}

json j_group(const FgAbGroup& g) {
    json f = json::array();
    for (const auto& d : g.invariant_factors()) f.push_back(j_int(d));
    return {{"invariant_factors", f}, {"free_rank", g.free_rank()}};
}

json j_subgroup(const Subgroup& h) {
    return {{"basis", j_matrix(h.basis())}, {"order", j_card(h.order())}, {"rank", h.rank()}};
}

json j_lattice(const RationalLattice& l) {
    return {{"basis", j_matrix(l.basis())}, {"denominator", j_int(l.denominator())}, {"rank", l.rank()}};
}

json j_value(const EntropyValue& v) {
    switch (v.kind()) {
        case EntropyValue::Kind::log_of: return {{"log_of", j_rat(v.argument())}};
        case EntropyValue::Kind::integer: return {{"integer", j_rat(v.argument())}};
        case EntropyValue::Kind::numeric: break;
    }
    return {{"value", v.approx()}, {"error_bound", v.error_bound()}};
}

json j_report(const EntropyReport& r) {
    json j{{"value", j_value(r.value)},
           {"path", path_name(r.path)},
           {"steps_used", r.steps_used},
           {"heuristic", r.heuristic}};
    if (r.cross_check)
        j["cross_check"] = {{"path", path_name(r.cross_check->path)},
                            {"value", j_value(r.cross_check->value)},
                            {"agree", r.cross_check->agree}};
    return j;
}

json j_mahler(const MahlerResult& m) {
    json j{{"value", m.value}, {"error_bound", m.error_bound}, {"exact", m.exact}, {"roots_outside", m.roots_outside}};
    if (m.exact_argument) j["log_of"] = j_int(*m.exact_argument);
    return j;
}

json j_poly(const IntPolynomial& f) {
    json c = json::array();
    for (const auto& v : f.coeffs()) c.push_back(j_int(v));
    return c;
}

// Human-readable rendering of a report object.
void render_text(const json& j, std::ostream& out, const std::string& indent = "") {
    for (auto it = j.begin(); it != j.end(); ++it) {
        const json& v = it.value();
        if (v.is_object() && v.contains("log_of") && v.size() == 1) {
            Rational q = parse_rational(v["log_of"].get<std::string>());
            char buf[64];
            std::snprintf(buf, sizeof buf, "%.12g", log_abs(q));
            out << indent << it.key() << ": log(" << v["log_of"].get<std::string>() << ") = " << buf << "\n";
        } else if (v.is_object()) {
            out << indent << it.key() << ":\n";
            render_text(v, out, indent + "  ");
        } else if (v.is_string()) {
            out << indent << it.key() << ": " << v.get<std::string>() << "\n";
        } else {
            out << indent << it.key() << ": " << v.dump() << "\n";
        }
    }
}

struct Context {
    SessionConfig config;
    StabilizationOptions stab() const { return {config.stabilization_window, config.max_steps}; }
    MahlerOptions mahler(RootSchedule s = RootSchedule::aberth) const {
        MahlerOptions o;
        o.tolerance = config.tolerance;
        o.schedule = s;
        return o;
    }
};

Subgroup make_subgroup(const FgAbGroup& g, const std::string& text, const std::string& what) {
    RatMatrix rows = parse_matrix(read_arg(text), what);
    if (rows.rows() && rows.cols() != g.dimension())
        fail(Errc::dimension_mismatch, what + " rows have length " + std::to_string(rows.cols()) + ", group has " +
                                           std::to_string(g.dimension()) + " coordinates");
    return Subgroup::from_lattice(g, require_integer(rows, what));
}

RationalLattice make_lattice(std::size_t dim, const std::string& text, const std::string& what) {
    RatMatrix rows = parse_matrix(read_arg(text), what);
    if (rows.rows() && rows.cols() != dim)
        fail(Errc::dimension_mismatch, what + " rows have length " + std::to_string(rows.cols()) + ", expected " +
                                           std::to_string(dim));
    return RationalLattice::from_rows(rows, dim);
}

Endo make_endo(const FgAbGroup& g, const RatMatrix& m) { return Endo(g, require_integer(m, "matrix")); }

RationalEndo make_rational_endo(std::size_t dim, const RatMatrix& m) {
    if (m.rows() != dim || m.cols() != dim)
        fail(Errc::dimension_mismatch, "matrix must be " + std::to_string(dim) + "x" + std::to_string(dim));
    return RationalEndo(m);
}

Ambient ambient_or_rational(const std::string& group_text, const RatMatrix& m) {
    if (!group_text.empty()) return parse_ambient(group_text);
    Ambient a;
    a.rational = true;
    a.dim = m.rows();
    return a;
}

Cardinal parse_cardinal(const json& j, const std::string& what) {
    if (j.is_string() && (j.get<std::string>() == "infinite" || j.get<std::string>() == "Infinite"))
        return Cardinal::infinite();
    return Cardinal::finite(json_integer(j, what));
}

GroupDescriptor parse_descriptor(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        fail(Errc::invalid_input, std::string("descriptor: ") + e.what());
    }
    if (!j.is_object()) fail(Errc::invalid_input, "descriptor must be a JSON object");
    GroupDescriptor d;
    if (j.contains("primes")) {
        for (const auto& p : j["primes"]) {
            PrimeComponent c;
            c.prime = json_integer(p.at("prime"), "prime");
            if (mpz_probab_prime_p(c.prime.get_mpz_t(), 30) == 0)
                fail(Errc::invalid_input, "descriptor prime " + c.prime.get_str() + " is not prime");
            if (p.contains("divisible_rank")) c.divisible_rank = parse_cardinal(p["divisible_rank"], "divisible_rank");
            if (p.contains("uk_invariants"))
                for (auto it = p["uk_invariants"].begin(); it != p["uk_invariants"].end(); ++it)
                    c.uk[parse_integer(it.key()).get_ui()] = parse_cardinal(it.value(), "uk invariant");
            d.primes.push_back(std::move(c));
        }
    }
    if (j.contains("torsion_free_part")) {
        const json& t = j["torsion_free_part"];
        std::string shape = t.is_string() ? t.get<std::string>() : t.at("kind").get<std::string>();
        static const std::map<std::string, TorsionFreeShape> shapes{
            {"zero", TorsionFreeShape::zero},
            {"divisible", TorsionFreeShape::divisible},
            {"homogeneous_completely_decomposable", TorsionFreeShape::homogeneous_completely_decomposable},
            {"other", TorsionFreeShape::other},
            {"Zero", TorsionFreeShape::zero},
            {"DivisibleRank", TorsionFreeShape::divisible},
            {"HomogeneousCompletelyDecomposable", TorsionFreeShape::homogeneous_completely_decomposable},
            {"Other", TorsionFreeShape::other}};
        auto it = shapes.find(shape);
        if (it == shapes.end()) fail(Errc::invalid_input, "unknown torsion_free_part kind '" + shape + "'");
        d.torsion_free = it->second;
        d.torsion_free_rank = (t.is_object() && t.contains("rank")) ? parse_cardinal(t["rank"], "rank")
                                                                   : Cardinal::finite(d.torsion_free == TorsionFreeShape::zero ? 0 : 1);
    }
    if (j.contains("cofinite_prime_default")) {
        static const std::map<std::string, CofiniteDefault> defaults{{"zero", CofiniteDefault::zero},
                                                                     {"divisible", CofiniteDefault::divisible},
                                                                     {"single_nonzero_uk", CofiniteDefault::single_nonzero_uk},
                                                                     {"neither", CofiniteDefault::neither}};
        std::string v = j["cofinite_prime_default"].get<std::string>();
        auto it = defaults.find(v);
        if (it == defaults.end()) fail(Errc::invalid_input, "unknown cofinite_prime_default '" + v + "'");
        d.cofinite = it->second;
    }
    return d;
}

const char* verdict_name(SelfInert v) {
    switch (v) {
        case SelfInert::self_inert: return "self_inert";
        case SelfInert::not_self_inert: return "not_self_inert";
        case SelfInert::undecided: return "undecided";
    }
    return "undecided";
}

RootSchedule parse_schedule(const std::string& s) {
    if (s == "aberth") return RootSchedule::aberth;
    if (s == "durand-kerner" || s == "durand_kerner") return RootSchedule::durand_kerner;
    fail(Errc::invalid_input, "unknown schedule '" + s + "'");
}

template <class T>
T parse_env_number(const std::string& name, const std::string& value) {
    try {
        std::size_t used = 0;
        if constexpr (std::is_same_v<T, double>) {
            double v = std::stod(value, &used);
            if (used == value.size()) return v;
        } else {
            long long v = std::stoll(value, &used);
            if (used == value.size()) return static_cast<T>(v);
        }
    } catch (const std::exception&) {
    }
    fail(Errc::invalid_input, "environment variable " + name + " has malformed value '" + value + "'");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err, const EnvLookup& env) {
    Context ctx;
    CLI::App app{"Inertial subgroups and algebraic entropy toolkit", "inertial"};
    app.set_help_flag("--help", "Print this help message and exit");
    app.require_subcommand(1);
    app.fallthrough();

    double tolerance = 0;
    int max_steps = 0, window = 0;
    std::uint64_t element_cap = 0;
    std::string output;
    auto* opt_tol = app.add_option("--tolerance", tolerance, "Mahler measure error tolerance");
    auto* opt_steps = app.add_option("--max-steps", max_steps, "Stabilization step budget");
    auto* opt_window = app.add_option("--window", window, "Stabilization window");
    auto* opt_cap = app.add_option("--element-cap", element_cap, "Element cap for explicit enumeration");
    auto* opt_out = app.add_option("--output", output, "Output mode")->check(CLI::IsMember({"json", "text"}));

    std::vector<std::pair<CLI::App*, std::function<json()>>> leaves;
    auto leaf = [&](CLI::App* parent, const std::string& name, const std::string& desc) {
        CLI::App* s = parent->add_subcommand(name, desc);
        return s;
    };

    std::string group_text, h_text, k_text, matrix_text, poly_text, relations_text, descriptor_text, cell_text;
    std::string set_text, table_text, phi_text, blocks_text, schedule_text = "aberth";
    long power = 1, steps = 1, height = default_witness_height, degree = 10, k_max = 10;
    double threshold = 0.2;
    bool cross_check = false;
    long budget = static_cast<long>(default_scan_budget);
    long identity = 0;

    // group
    auto* group = app.add_subcommand("group", "Finitely generated abelian groups");
    group->require_subcommand(1);
    {
        auto* canon = leaf(group, "canon", "Invariant factors of Z^n / rowspan(relations)");
        canon->add_option("--relations", relations_text, "Relation matrix rows")->required();
        leaves.emplace_back(canon, [&]() {
            IntMatrix r = require_integer(parse_matrix(read_arg(relations_text), "relations"), "relations");
            FgAbGroup g = canonicalize_presentation(r);
            return json{{"group", j_group(g)}, {"description", g.to_string()}};
        });
    }

    // sub
    auto* sub = app.add_subcommand("sub", "Subgroup lattice operations");
    sub->require_subcommand(1);
    for (const std::string name : {"index", "sum", "meet"}) {
        auto* s = leaf(sub, name, name == "index" ? "[H : H ∩ K]" : (name == "sum" ? "H + K" : "H ∩ K"));
        s->add_option("--group", group_text, "Ambient group")->required();
        s->add_option("--h", h_text, "Basis rows of H")->required();
        s->add_option("--k", k_text, "Basis rows of K")->required();
        leaves.emplace_back(s, [&, name]() {
            Ambient a = parse_ambient(group_text);
            if (a.rational) {
                RationalLattice h = make_lattice(a.dim, h_text, "H"), k = make_lattice(a.dim, k_text, "K");
                if (name == "index") return json{{"index", j_card(lattice_index(h, k))}};
                return json{{"lattice", j_lattice(name == "sum" ? lattice_sum(h, k) : lattice_intersect(h, k))}};
            }
            Subgroup h = make_subgroup(a.group, h_text, "H"), k = make_subgroup(a.group, k_text, "K");
            if (name == "index") return json{{"index", j_card(subgroup_index(h, k))}};
            return json{{"subgroup", j_subgroup(name == "sum" ? subgroup_sum(h, k) : subgroup_intersect(h, k))}};
        });
    }

    // inert
    auto* inert = app.add_subcommand("inert", "Inertness of subgroups and endomorphisms");
    inert->require_subcommand(1);
    {
        auto* check = leaf(inert, "check", "[φH : φH ∩ H] and |(H + φH) / H|");
        check->add_option("--group", group_text, "Ambient group (default Q^n)");
        check->add_option("--h", h_text, "Basis rows of H")->required();
        check->add_option("--matrix", matrix_text, "Endomorphism matrix")->required();
        check->add_option("--power", power, "Exponent k for the iterated index of φ^k");
        leaves.emplace_back(check, [&]() {
            RatMatrix m = parse_matrix(read_arg(matrix_text));
            Ambient a = ambient_or_rational(group_text, m);
            if (a.rational) {
                RationalEndo phi = make_rational_endo(a.dim, m);
                RationalLattice h = make_lattice(a.dim, h_text, "H");
                InertVerdict v = inert_index(h, phi);
                json j{{"inert", v.inert}, {"index", j_card(v.index)}, {"strict_index", j_card(strict_inert_index(h, phi))}};
                if (power != 1) j["iterated_index"] = j_card(iterated_inert_index(h, phi, power));
                return j;
            }
            Endo phi = make_endo(a.group, m);
            Subgroup h = make_subgroup(a.group, h_text, "H");
            InertVerdict v = inert_index(h, phi);
            json j{{"inert", v.inert}, {"index", j_card(v.index)}, {"strict_index", j_card(strict_inert_index(h, phi))}};
            if (power != 1) j["iterated_index"] = j_card(iterated_inert_index(h, phi, power));
            return j;
        });

        auto* endo = leaf(inert, "endo", "Decide whether every subgroup is φ-inert");
        endo->add_option("--group", group_text, "Ambient group")->required();
        endo->add_option("--matrix", matrix_text, "Endomorphism matrix")->required();
        endo->add_option("--height", height, "Witness search height");
        leaves.emplace_back(endo, [&]() {
            Ambient a = parse_ambient(group_text);
            if (a.rational) fail(Errc::unsupported_ambient, "inertial endomorphism test needs a finitely generated group");
            Endo phi = make_endo(a.group, parse_matrix(read_arg(matrix_text)));
            InertialCertificate c = is_inertial_endomorphism(phi, height);
            json j{{"inertial", c.kind == InertialCertificate::Kind::multiplication_integer}, {"finitary", is_finitary(phi)}};
            auto mult = is_multiplication(phi);
            j["multiplication"] = mult ? json(j_int(*mult)) : json(nullptr);
            if (c.kind == InertialCertificate::Kind::multiplication_integer) {
                j["certificate"] = {{"kind", "multiplication_integer"},
                                    {"m", j_int(*c.m)},
                                    {"invariant_subgroup", j_subgroup(*c.invariant_subgroup)}};
            } else {
                j["certificate"] = {{"kind", "non_inertial_witness"},
                                    {"witness", j_subgroup(*c.witness)},
                                    {"witness_strict_index", j_card(*c.witness_index)}};
            }
            return j;
        });

        auto* witness = leaf(inert, "witness", "Search for a cyclic subgroup that is not φ-inert");
        witness->add_option("--group", group_text, "Ambient group")->required();
        witness->add_option("--matrix", matrix_text, "Endomorphism matrix")->required();
        witness->add_option("--height", height, "Coordinate height bound");
        leaves.emplace_back(witness, [&]() {
            Ambient a = parse_ambient(group_text);
            if (a.rational) fail(Errc::unsupported_ambient, "witness search needs a finitely generated group");
            Endo phi = make_endo(a.group, parse_matrix(read_arg(matrix_text)));
            auto w = find_non_inert_witness(phi, height);
            if (!w) return json{{"witness", nullptr}, {"height", height}};
            return json{{"witness", j_subgroup(*w)}, {"strict_index", j_card(strict_inert_index(*w, phi))}, {"height", height}};
        });
    }

    // fullyinert
    auto* fully = app.add_subcommand("fullyinert", "Fully inert subgroups and self-inert groups");
    fully->require_subcommand(1);
    {
        auto* check = leaf(fully, "check", "Decide whether H is fully inert");
        check->add_option("--group", group_text, "Ambient group")->required();
        check->add_option("--h", h_text, "Basis rows of H")->required();
        check->add_option("--blocks", blocks_text, "Coordinate blocks of a direct decomposition, e.g. [[0],[1]]");
        leaves.emplace_back(check, [&]() {
            Ambient a = parse_ambient(group_text);
            if (a.rational) {
                RationalLattice h = make_lattice(a.dim, h_text, "H");
                UniformVerdict u = is_uniformly_fully_inert(h);
                json j{{"fully_inert", is_fully_inert(h)}, {"uniformly_fully_inert", u.uniform}};
                if (!u.uniform)
                    j["uniform_refutation"] = {{"scalar", j_rat(*u.witness_scalar)}, {"power", *u.power}, {"index", j_card(*u.index)}};
                return j;
            }
            Subgroup h = make_subgroup(a.group, h_text, "H");
            json j;
            if (!blocks_text.empty()) {
                RatMatrix dummy;
                json blocks = json::parse(read_arg(blocks_text), nullptr, false);
                if (blocks.is_discarded() || !blocks.is_array()) fail(Errc::invalid_input, "blocks must be a JSON array of arrays");
                std::vector<std::vector<std::size_t>> bl;
                for (const auto& b : blocks) {
                    std::vector<std::size_t> v;
                    for (const auto& c : b) {
                        if (!c.is_number_unsigned()) fail(Errc::invalid_input, "block entries must be coordinate indices");
                        v.push_back(c.get<std::size_t>());
                    }
                    bl.push_back(v);
                }
                BoxDecomposition d = box_decompose(h, bl);
                json parts = json::array();
                for (std::size_t i = 0; i < d.parts.size(); ++i)
                    parts.push_back({{"part", j_subgroup(d.parts[i])},
                                     {"fully_inert", d.part_verdicts[i] ? json(*d.part_verdicts[i]) : json(nullptr)}});
                j["box"] = {{"parts", parts}, {"product", j_subgroup(d.product)}, {"defect", j_card(d.defect)}};
            }
            j["fully_inert"] = is_fully_inert(h);
            j["fully_invariant"] = is_fully_invariant(h);
            if (a.group.is_free()) {
                auto n = commensurable_fully_invariant(h);
                j["commensurable_fully_invariant"] = n ? json(j_int(*n)) : json(nullptr);
                auto r = fully_inert_refutation(h);
                j["refutation"] = r ? j_matrix(r->matrix()) : json(nullptr);
            }
            return j;
        });

        auto* classify = leaf(fully, "classify", "Self-inert classification of a group descriptor");
        classify->add_option("--descriptor", descriptor_text, "Descriptor JSON or @file")->required();
        leaves.emplace_back(classify, [&]() {
            SelfInertVerdict v = classify_self_inert(parse_descriptor(read_arg(descriptor_text)));
            return json{{"verdict", verdict_name(v.verdict)}, {"reason", v.reason}};
        });
    }

    // entropy
    auto* entropy = app.add_subcommand("entropy", "Algebraic entropy invariants");
    entropy->require_subcommand(1);
    {
        auto* e = leaf(entropy, "ent", "ent via trajectory stabilization");
        e->add_option("--group", group_text, "Ambient finitely generated group");
        e->add_option("--matrix", matrix_text, "Endomorphism matrix");
        e->add_option("--cell", cell_text, "Finite cell F of the Bernoulli shift (uses the coordinate copy)");
        leaves.emplace_back(e, [&]() {
            if (!cell_text.empty()) {
                ShiftGroup g(parse_ambient(cell_text).group);
                ShiftSubgroup f = ShiftSubgroup::generate(g, g.coordinate_copy(0), ctx.config.element_cap);
                return j_report(H_alg_stabilized(f, ctx.stab(), ctx.config.element_cap));
            }
            if (group_text.empty() || matrix_text.empty()) fail(Errc::invalid_input, "need --cell, or --group with --matrix");
            Ambient a = parse_ambient(group_text);
            if (a.rational) return j_report({EntropyValue::zero(), EntropyPath::stabilization, 0, false, std::nullopt});
            return j_report(ent(make_endo(a.group, parse_matrix(read_arg(matrix_text))), ctx.stab()));
        });

        auto* halg = leaf(entropy, "halg", "h_alg via the Mahler measure of the characteristic polynomial");
        halg->add_option("--matrix", matrix_text, "Endomorphism matrix")->required();
        halg->add_option("--group", group_text, "Ambient group (default Q^n)");
        halg->add_option("--schedule", schedule_text, "Root refinement schedule: aberth or durand-kerner");
        leaves.emplace_back(halg, [&]() {
            RatMatrix m = parse_matrix(read_arg(matrix_text));
            Ambient a = ambient_or_rational(group_text, m);
            MahlerOptions mo = ctx.mahler(parse_schedule(schedule_text));
            EntropyReport r = a.rational ? h_alg_yuzvinski(make_rational_endo(a.dim, m), mo)
                                         : h_alg_yuzvinski(make_endo(a.group, m), mo);
            json j = j_report(r);
            j["charpoly"] = j_poly(a.rational ? charpoly_primitive(m) : charpoly_primitive(make_endo(a.group, m).free_block()));
            return j;
        });

        auto* intr = leaf(entropy, "intrinsic", "Intrinsic entropy on Q^n");
        intr->add_option("--matrix", matrix_text, "Rational endomorphism matrix")->required();
        intr->add_flag("--cross-check", cross_check, "Also run the stabilization path on Z^n");
        leaves.emplace_back(intr, [&]() {
            RatMatrix m = parse_matrix(read_arg(matrix_text));
            return j_report(intrinsic_entropy(make_rational_endo(m.rows(), m), cross_check, ctx.stab()));
        });

        auto* adj = leaf(entropy, "adjoint", "Intrinsic adjoint entropy from the cotrajectory");
        adj->add_option("--matrix", matrix_text, "Endomorphism matrix")->required();
        adj->add_option("--h", h_text, "Basis rows of H")->required();
        adj->add_option("--group", group_text, "Ambient group (default Q^n)");
        leaves.emplace_back(adj, [&]() {
            RatMatrix m = parse_matrix(read_arg(matrix_text));
            Ambient a = ambient_or_rational(group_text, m);
            if (a.rational)
                return j_report(intrinsic_adjoint_entropy(make_rational_endo(a.dim, m), make_lattice(a.dim, h_text, "H"), ctx.stab()));
            return j_report(intrinsic_adjoint_entropy(make_endo(a.group, m), make_subgroup(a.group, h_text, "H"), ctx.stab()));
        });

        auto* lf = leaf(entropy, "limitfree", "Limit-free formula log|T/φT| - log|ker φ ∩ T|");
        lf->add_option("--group", group_text, "Ambient finitely generated group");
        lf->add_option("--matrix", matrix_text, "Endomorphism matrix");
        lf->add_option("--h", h_text, "Basis rows of F");
        lf->add_option("--cell", cell_text, "Finite cell F of the Bernoulli shift (symbolic path)");
        leaves.emplace_back(lf, [&]() {
            if (!cell_text.empty()) {
                ShiftGroup g(parse_ambient(cell_text).group);
                return j_report(limit_free_H(ShiftSubgroup::generate(g, g.coordinate_copy(0), ctx.config.element_cap)));
            }
            if (group_text.empty() || matrix_text.empty() || h_text.empty())
                fail(Errc::invalid_input, "need --cell, or --group with --matrix and --h");
            Ambient a = parse_ambient(group_text);
            if (a.rational) fail(Errc::trajectory_not_finite, "trajectories in Q^n are not finite");
            return j_report(limit_free_H(make_endo(a.group, parse_matrix(read_arg(matrix_text))),
                                         make_subgroup(a.group, h_text, "F"), ctx.stab()));
        });

        auto* htop = leaf(entropy, "htop", "Topological entropy of the left shift on the full one-sided product");
        htop->add_option("--cell", cell_text, "Finite cell F")->required();
        leaves.emplace_back(htop, [&]() {
            return j_report(h_top_shift(CylinderFamily(parse_ambient(cell_text).group, false), ctx.stab()));
        });

        auto* scale = leaf(entropy, "scale", "Scale of the two-sided shift over the cylinder family U_0..U_K");
        scale->add_option("--cell", cell_text, "Finite cell F")->required();
        scale->add_option("--k", k_max, "Largest cylinder index K");
        leaves.emplace_back(scale, [&]() {
            ScaleReport r = scale_over_family(CylinderFamily(parse_ambient(cell_text).group, true), k_max);
            return json{{"scale", j_int(r.scale)},
                        {"log_scale", j_value(EntropyValue::log_of(Rational(r.scale)))},
                        {"minimizing_k", r.minimizing_k},
                        {"family_size", r.family_size},
                        {"family_relative", r.family_relative}};
        });
    }

    // growth
    auto* growth = app.add_subcommand("growth", "Growth of endomorphisms");
    growth->require_subcommand(1);
    {
        auto* cls = leaf(growth, "classify", "Polynomial or exponential growth");
        cls->add_option("--matrix", matrix_text, "Endomorphism matrix")->required();
        cls->add_option("--group", group_text, "Ambient group (default Q^n)");
        leaves.emplace_back(cls, [&]() {
            RatMatrix m = parse_matrix(read_arg(matrix_text));
            Ambient a = ambient_or_rational(group_text, m);
            Growth g = a.rational ? classify_growth(make_rational_endo(a.dim, m)) : classify_growth(make_endo(a.group, m));
            return json{{"growth", growth_name(g)}};
        });

        auto* ss = leaf(growth, "sumset", "Sizes |F + φF + ... + φ^{n-1}F|");
        ss->add_option("--set", set_text, "Elements of F as rows")->required();
        ss->add_option("--n", steps, "Largest n")->required();
        ss->add_option("--group", group_text, "Ambient finitely generated group");
        ss->add_option("--matrix", matrix_text, "Endomorphism matrix");
        ss->add_option("--cell", cell_text, "Finite cell of the Bernoulli shift; rows are cell elements at position 0");
        leaves.emplace_back(ss, [&]() {
            RatMatrix rows = parse_matrix(read_arg(set_text), "set");
            IntMatrix ir = require_integer(rows, "set");
            SumsetGrowth gr;
            if (!cell_text.empty()) {
                ShiftGroup g(parse_ambient(cell_text).group);
                std::vector<ShiftElement> f;
                for (std::size_t i = 0; i < ir.rows(); ++i)
                    f.push_back(g.make({{0, GroupElement(g.cell(), ir.row_vector(i))}}));
                gr = sumset_growth(g, f, steps, ctx.config.element_cap);
            } else {
                if (group_text.empty() || matrix_text.empty()) fail(Errc::invalid_input, "need --cell, or --group with --matrix");
                Ambient a = parse_ambient(group_text);
                if (a.rational) fail(Errc::unsupported_ambient, "sumsets need a finitely generated group");
                Endo phi = make_endo(a.group, parse_matrix(read_arg(matrix_text)));
                std::vector<GroupElement> f;
                for (std::size_t i = 0; i < ir.rows(); ++i) {
                    if (ir.cols() != a.group.dimension()) fail(Errc::dimension_mismatch, "set element length");
                    f.emplace_back(a.group, ir.row_vector(i));
                }
                gr = sumset_growth(phi, f, steps, ctx.config.element_cap);
            }
            json sizes = json::array();
            for (const auto& s : gr.sizes) sizes.push_back(j_int(s));
            return json{{"sizes", sizes}, {"subadditive", gr.subadditive}};
        });
    }

    // mahler
    auto* mahler = app.add_subcommand("mahler", "Integer polynomial engine");
    mahler->require_subcommand(1);
    {
        auto* measure = leaf(mahler, "measure", "Certified Mahler measure");
        measure->add_option("--poly", poly_text, "Ascending coefficients a0,a1,...")->required();
        measure->add_option("--schedule", schedule_text, "Root refinement schedule: aberth or durand-kerner");
        leaves.emplace_back(measure, [&]() {
            IntPolynomial f = parse_polynomial(read_arg(poly_text));
            json j = j_mahler(mahler_measure(f, ctx.mahler(parse_schedule(schedule_text))));
            j["polynomial"] = f.to_string();
            return j;
        });

        auto* kron = leaf(mahler, "kronecker", "Exact cyclotomic test");
        kron->add_option("--poly", poly_text, "Ascending coefficients a0,a1,...")->required();
        leaves.emplace_back(kron, [&]() {
            IntPolynomial f = parse_polynomial(read_arg(poly_text));
            return json{{"kronecker", kronecker_test(f)}, {"polynomial", f.to_string()}};
        });

        auto* scan = leaf(mahler, "scan", "Monic non-cyclotomic polynomials of small measure");
        scan->add_option("--degree", degree, "Largest degree");
        scan->add_option("--height", height, "Largest coefficient magnitude");
        scan->add_option("--threshold", threshold, "Measure threshold");
        scan->add_option("--budget", budget, "Largest number of polynomials to enumerate");
        leaves.emplace_back(scan, [&]() {
            auto hits = small_measure_scan(static_cast<int>(degree), static_cast<int>(height), threshold, ctx.mahler(),
                                           static_cast<std::uint64_t>(budget));
            json list = json::array();
            for (const auto& h : hits) list.push_back({{"coeffs", j_poly(h.polynomial)}, {"polynomial", h.polynomial.to_string()}, {"measure", j_mahler(h.measure)}});
            return json{{"hits", list}, {"count", hits.size()}};
        });
    }

    // nonabelian
    auto* nonab = app.add_subcommand("nonabelian", "Finite groups given by Cayley tables");
    nonab->require_subcommand(1);
    {
        auto* traj = leaf(nonab, "traj", "Setwise trajectory T_n = H H^φ ... H^{φ^n} and transversal counts t_n");
        traj->add_option("--table", table_text, "Cayley table as a JSON array of rows, or @file")->required();
        traj->add_option("--phi", phi_text, "Endomorphism as the list of images")->required();
        traj->add_option("--h", h_text, "Generators of the subgroup H")->required();
        traj->add_option("--n", steps, "Largest n")->required();
        traj->add_option("--identity", identity, "Index of the identity element");
        leaves.emplace_back(traj, [&]() {
            json t = json::parse(read_arg(table_text), nullptr, false);
            if (t.is_discarded() || !t.is_array()) fail(Errc::invalid_input, "table must be a JSON array of rows");
            std::vector<std::vector<std::uint32_t>> table;
            for (const auto& r : t) {
                if (!r.is_array()) fail(Errc::invalid_input, "table rows must be arrays");
                std::vector<std::uint32_t> row;
                for (const auto& v : r) {
                    if (!v.is_number_unsigned()) fail(Errc::invalid_input, "table entries must be element indices");
                    row.push_back(v.get<std::uint32_t>());
                }
                table.push_back(std::move(row));
            }
            FiniteGroup g(std::move(table), static_cast<std::uint32_t>(identity));
            auto to_indices = [&](const std::string& text, const std::string& what) {
                std::vector<std::uint32_t> v;
                for (const auto& q : parse_vector(read_arg(text), what)) {
                    if (q.get_den() != 1 || q < 0 || q >= g.order()) fail(Errc::invalid_input, what + " entry out of range");
                    v.push_back(static_cast<std::uint32_t>(q.get_num().get_ui()));
                }
                return v;
            };
            std::vector<std::uint32_t> phi = to_indices(phi_text, "phi");
            if (phi.size() != g.order()) fail(Errc::invalid_input, "phi must list one image per element");
            if (!g.is_endomorphism(phi)) fail(Errc::not_homomorphism, "phi is not an endomorphism");
            ElementSet h = g.closure(to_indices(h_text, "H"));
            std::size_t tval = finite_group_inert_index(g, phi, h);
            json tn = json::array(), ratio = json::array();
            bool bound = true;
            double sup = 0.0;
            for (long n = 1; n <= steps; ++n) {
                std::size_t c = minimal_transversal_count(g, h, finite_group_trajectory(g, phi, h, static_cast<int>(n)));
                tn.push_back(c);
                if (static_cast<double>(c) > std::pow(static_cast<double>(tval), static_cast<double>(n)) + 0.5) bound = false;
                sup = std::max(sup, std::log(static_cast<double>(c)) / static_cast<double>(n));
                ratio.push_back(sup);
            }
            json hs = json::array();
            for (auto x : h) hs.push_back(x);
            return json{{"t", tval}, {"t_n", tn}, {"bound_holds", bound}, {"running_sup_log_ratio", ratio}, {"subgroup", hs}};
        });
    }

    try {
        std::vector<std::string> rev(args.rbegin(), args.rend());
        app.parse(rev);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }

    try {
        SessionConfig& c = ctx.config;
        if (auto v = env("INERTIAL_TOLERANCE")) c.tolerance = parse_env_number<double>("INERTIAL_TOLERANCE", *v);
        if (auto v = env("INERTIAL_MAX_STEPS")) c.max_steps = parse_env_number<int>("INERTIAL_MAX_STEPS", *v);
        if (auto v = env("INERTIAL_WINDOW")) c.stabilization_window = parse_env_number<int>("INERTIAL_WINDOW", *v);
        if (auto v = env("INERTIAL_ELEMENT_CAP")) c.element_cap = parse_env_number<std::uint64_t>("INERTIAL_ELEMENT_CAP", *v);
        if (auto v = env("INERTIAL_OUTPUT")) c.output_mode = *v;
        if (opt_tol->count()) c.tolerance = tolerance;
        if (opt_steps->count()) c.max_steps = max_steps;
        if (opt_window->count()) c.stabilization_window = window;
        if (opt_cap->count()) c.element_cap = element_cap;
        if (opt_out->count()) c.output_mode = output;
        if (!(c.tolerance > 0) || c.max_steps < 1 || c.stabilization_window < 1 || c.element_cap < 1 ||
            c.stabilization_window > c.max_steps)
            fail(Errc::invalid_input, "session settings must be positive with window <= max_steps");
        if (c.output_mode != "json" && c.output_mode != "text")
            fail(Errc::invalid_input, "output mode must be json or text");

        json result;
        bool ran = false;
        for (auto& [cmd, fn] : leaves)
            if (cmd->parsed()) {
                result = fn();
                ran = true;
                break;
            }
        if (!ran) fail(Errc::invalid_input, "no command given");
        if (c.output_mode == "json") out << result.dump(2) << "\n";
        else render_text(result, out);
        return 0;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        switch (e.error_class()) {
            case ErrorClass::input: return 1;
            case ErrorClass::domain: return 2;
            case ErrorClass::budget: return 3;
        }
        return 2;
    } catch (const nlohmann::json::exception& e) {
        err << "error: invalid_input: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace inertial::cli
