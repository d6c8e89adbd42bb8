// ramweil: construct and decompose the Weil representation of U_m(A) for a
// ramified quadratic extension A of a finite local ring, verifying the
// counting, degree and invariance claims exhaustively at small parameters.

#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "ramweil/suite.hpp"

#ifndef RAMWEIL_GOLDEN_DIR
#define RAMWEIL_GOLDEN_DIR "goldens"
#endif

namespace {

using namespace ramweil;

int parseForm(const std::string& form, RunParams& rp) {
    if (form == "type1") {
        rp.formToken = FormType::Type1;
        return 0;
    }
    if (form == "typedelta") {
        rp.formToken = FormType::TypeDelta;
        return 0;
    }
    rp.diagCoeffs.clear();
    std::stringstream ss(form);
    std::string entry;
    while (std::getline(ss, entry, ',')) {
        std::vector<long long> coeffs;
        std::stringstream es(entry);
        std::string c;
        while (std::getline(es, c, ':')) coeffs.push_back(std::stoll(c));
        if (coeffs.empty()) return 1;
        rp.diagCoeffs.push_back(coeffs);
    }
    return rp.diagCoeffs.empty() ? 1 : 0;
}

void writeOut(const std::string& path, const std::string& text) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw DomainError("cannot open output file: " + path);
    f.write(text.data(), static_cast<std::streamsize>(text.size()));
}

int reportExit(const Report& r) { return r.allPass() ? 0 : 2; }

int cmdSelfTest(const RunParams& base, const std::string& goldenDir, const std::string& outDir,
                bool writeGoldens) {
    namespace fs = std::filesystem;
    int failures = 0;
    for (const auto& pt : selfTestMatrix()) {
        Report r = runSelfTestPoint(pt, base);
        std::string json = canonicalJson(r);
        fs::path golden = fs::path(goldenDir) / (pt.name + ".json");
        if (!outDir.empty()) {
            fs::create_directories(outDir);
            writeOut((fs::path(outDir) / (pt.name + ".json")).string(), json);
        }
        if (writeGoldens) {
            fs::create_directories(goldenDir);
            writeOut(golden.string(), json);
            std::cout << "WROTE " << pt.name << "\n";
            continue;
        }
        std::ifstream gf(golden, std::ios::binary);
        std::stringstream buf;
        buf << gf.rdbuf();
        bool match = gf.good() && buf.str() == json;
        bool pass = match && r.allPass();
        std::cout << (pass ? "PASS " : "FAIL ") << pt.name
                  << (match ? "" : " (golden mismatch)") << "\n";
        if (!pass) ++failures;
    }
    return failures == 0 ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Weil representation of a unitary group over a ramified quadratic extension"};
    app.require_subcommand(1);

    RunParams rp;
    std::string form = "type1";
    std::string out, goldens = RAMWEIL_GOLDEN_DIR, outDir;
    bool writeGoldens = false;

    auto addCommon = [&](CLI::App* c, bool needsForm) {
        c->add_option("--p", rp.p, "odd prime characteristic");
        c->add_option("--k", rp.k, "field degree, q = p^k");
        c->add_option("--modulus", rp.modulus, "k+1 modulus coefficients, constant first")
            ->delimiter(',');
        c->add_option("--ell", rp.ell, "nilpotency degree of the maximal ideal of R");
        c->add_option("--tol", rp.tol, "rounding tolerance");
        c->add_option("--cap", rp.cap, "enumeration cap");
        c->add_option("--threads", rp.threads, "worker threads");
        if (needsForm) {
            c->add_option("--m", rp.m, "module rank");
            c->add_option("--form", form, "type1 | typedelta | diagonal entry list");
            c->add_option("--out", out, "write the JSON report here");
        }
    };

    CLI::App* verify = app.add_subcommand("verify", "run the full invariant suite at one parameter point");
    addCommon(verify, true);
    CLI::App* decompose = app.add_subcommand("decompose", "decompose the Weil module");
    addCommon(decompose, true);
    CLI::App* orbitsCmd = app.add_subcommand("orbits", "orbit counts of U on V");
    addCommon(orbitsCmd, true);
    CLI::App* selftest = app.add_subcommand("selftest", "run the acceptance matrix against golden files");
    addCommon(selftest, false);
    selftest->add_option("--goldens", goldens, "golden file directory");
    selftest->add_option("--out", outDir, "also write generated reports to this directory");
    selftest->add_flag("--write-goldens", writeGoldens, "regenerate golden files");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 1;  // help exits clean, usage errors exit 1
    }

    try {
        if (app.got_subcommand(selftest)) return cmdSelfTest(rp, goldens, outDir, writeGoldens);

        if (parseForm(form, rp) != 0) {
            std::cerr << "error: cannot parse --form\n";
            return 1;
        }
        Report r;
        if (app.got_subcommand(verify)) {
            r = runVerify(rp);
        } else if (app.got_subcommand(decompose)) {
            r = runDecomposeReport(rp);
        } else {
            r = runOrbitsReport(rp);
        }
        std::string json = canonicalJson(r);
        if (!out.empty())
            writeOut(out, json);
        else
            std::cout << json;
        if (app.got_subcommand(decompose) || app.got_subcommand(verify)) {
            std::cout << constituentTable(r);
            std::size_t failed = 0;
            for (const auto& c : r.checks)
                if (!c.pass) {
                    std::cout << "FAIL " << c.name << " lhs=" << c.lhs << " rhs=" << c.rhs << "\n";
                    ++failed;
                }
            std::cout << r.checks.size() - failed << "/" << r.checks.size() << " checks passed\n";
        }
        return reportExit(r);
    } catch (const ResourceError& e) {
        std::cerr << "resource error: " << e.what() << "\n";
        return 3;
    } catch (const NumericalError& e) {
        std::cerr << "numerical error: " << e.what() << "\n";
        return 4;
    } catch (const ConsistencyError& e) {
        std::cerr << "consistency error: " << e.what() << "\n";
        return 4;
    } catch (const DomainError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
