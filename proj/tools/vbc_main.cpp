#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "vbc/report.hpp"
#include "vbc/spec.hpp"
#include "vbc/verify.hpp"

using namespace vbc;

namespace {

struct Args {
    std::string command;
    std::string path;
    std::optional<int> arity, samples, jetCap;
    std::optional<std::uint64_t> seed;
    std::string format = "text";
    std::string structure = "S";
    std::string out;
    bool timings = false;
};

Report run(const Args& a, const SpecDocument& doc) {
    const TheorySpec& spec = doc.spec;
    VerifyOptions o;
    o.samples = a.samples.value_or(doc.options.samples.value_or(o.samples));
    o.arity = a.arity.value_or(doc.options.arity.value_or(o.arity));
    o.seed = a.seed.value_or(static_cast<std::uint64_t>(doc.options.seed.value_or(1)));

    Report rep;
    rep.subject = spec.name + " " + a.command;
    Report compat = checkCompatibility(spec);
    if (a.command == "check" || !compat.ok()) {
        rep.append(compat);
        return rep;
    }
    SymplecticDevelopment dev = buildDevelopment(spec.omega, spec.Q);
    if (a.command == "develop") {
        rep.append(developmentReport(dev));
        return rep;
    }
    if (!dev.certified()) {
        rep.append(developmentReport(dev));
        return rep;
    }
    HamiltonianTriple t = presentationTriple(spec, dev);
    HamiltonianStructure H(dev);
    const bool all = a.command == "report";
    if (all) {
        rep.append(compat);
        rep.append(developmentReport(dev));
    }
    if (all || a.command == "triple") rep.append(tripleReport(t));
    if (all || a.command == "brackets") {
        rep.append(bracketReport(H, o));
        rep.append(hamAlgebraReport(H, t, o));
    }
    if (all || a.command == "linfty-verify")
        rep.append(linftyReport(H, a.structure == "B" ? TowerKind::B : TowerKind::S, o));
    if (all || a.command == "mc") {
        rep.append(maurerCartanReport(H, t, o));
        rep.append(quasiInverseReport(H, t, o));
    }
    if (all || a.command == "momentum") rep.append(checkMultisymplectic(t));
    if (all) rep.append(redefinitionReport(t, o));
    return rep;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Certification of local BV theories on the variational bicomplex"};
    app.require_subcommand(1);
    Args a;
    const std::vector<std::pair<std::string, std::string>> commands = {
        {"check", "compatibility of omega and Q"},
        {"develop", "symplectic development of omega along Q"},
        {"triple", "Hamiltonian triple, master equation, Noether and Lepage"},
        {"brackets", "bracket identities and the local functional algebra"},
        {"linfty-verify", "generalized Jacobi identities of a bracket tower"},
        {"mc", "Maurer-Cartan elements and the quasi-inverse"},
        {"momentum", "multisymplectic momentum map"},
        {"report", "every battery"},
    };
    for (const auto& [name, help] : commands) {
        CLI::App* sub = app.add_subcommand(name, help);
        sub->add_option("spec", a.path, "theory file (.spec)")->required()->check(CLI::ExistingFile);
        sub->add_option("--arity", a.arity, "highest arity")->check(CLI::Range(1, 4));
        sub->add_option("--samples", a.samples, "seeded samples per identity")->check(CLI::NonNegativeNumber);
        sub->add_option("--seed", a.seed, "random seed");
        sub->add_option("--jet-cap", a.jetCap, "maximal jet order (default 8)")->check(CLI::PositiveNumber);
        sub->add_option("--format", a.format, "text or json")->check(CLI::IsMember({"text", "json"}));
        sub->add_option("--structure", a.structure, "tower for linfty-verify")->check(CLI::IsMember({"S", "B"}));
        sub->add_option("--out", a.out, "write the report here");
        sub->add_flag("--timings", a.timings, "include per-check timings");
        sub->callback([&a, name = name] { a.command = name; });
    }
    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    SpecDocument doc;
    try {
        doc = loadSpec(a.path, a.jetCap);
    } catch (const SpecError& e) {
        std::cerr << a.path << ":" << e.line << ":" << e.column << ": " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << a.path << ": " << e.what() << "\n";
        return 2;
    }

    Report rep;
    try {
        rep = run(a, doc);
    } catch (const std::exception& e) {
        rep.subject = doc.spec.name + " " + a.command;
        rep.flag("evaluation", false, e.what());
    }

    ReportStyle style;
    style.format = a.format == "json" ? ReportFormat::Json : ReportFormat::Text;
    style.timings = a.timings;
    const std::string text = serialize(rep, style);
    if (a.out.empty()) {
        std::cout << text;
    } else {
        std::ofstream f(a.out);
        if (!f) {
            std::cerr << "cannot write '" << a.out << "'\n";
            return 2;
        }
        f << text;
    }
    if (!rep.ok()) {
        std::cerr << failureSummary(rep) << "\n";
        return 1;
    }
    return 0;
}
