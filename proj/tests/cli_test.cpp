#include <doctest.h>
#include <oracles.hpp>

#include <sheafctx/model_io.hpp>
#include <sheafctx_cli/cli.hpp>

#include <json.hpp>

#include <filesystem>
#include <sstream>

using nlohmann::json;

namespace
{
    struct Outcome
    {
        int code;
        std::string out;
        std::string err;
    };

    auto run(std::vector<std::string> args) -> Outcome
    {
        std::ostringstream out, err;
        int code = sheafctx::cli::run(args, out, err);
        return {code, out.str(), err.str()};
    }

    auto fixture(const std::string & name) -> std::string
    {
        return std::string{SHEAFCTX_FIXTURE_DIR} + "/" + name + ".json";
    }
}

TEST_CASE("check reports verdicts, certificates and provenance")
{
    auto r = run({"check", fixture("prbox"), "--no-timings"});
    CHECK(r.code == 10);
    auto doc = json::parse(r.out);
    CHECK(doc["tool"] == "sheafctx");
    CHECK(doc["mode"] == "rational");
    CHECK(doc["inputs"][0]["fixture"] == "prbox");
    CHECK(doc["inputs"][0]["sha256"] == sheafctx::cli::sha256_hex(sheafctx::read_text_file(fixture("prbox"))));
    CHECK(doc["result"]["strongly_contextual"] == true);
    CHECK(doc["result"]["contextual_fraction"] == "1/1");
    CHECK(doc["result"]["certificate"]["kind"] == "farkas");
    CHECK_FALSE(doc.contains("timings"));

    auto d = run({"check", fixture("deterministic")});
    CHECK(d.code == 0);
    auto ddoc = json::parse(d.out);
    CHECK(ddoc["result"]["unique_global_section"] == true);
    CHECK(ddoc["result"]["certificate"]["kind"] == "global_distribution");
    CHECK(ddoc.contains("timings"));
}

TEST_CASE("incompatible models exit 2 with the violation list")
{
    auto r = run({"check", fixture("signalling"), "--no-timings"});
    CHECK(r.code == 2);
    auto doc = json::parse(r.out);
    CHECK(doc["error"]["code"] == "IncompatibleModel");
    CHECK(doc["error"]["detail"]["violations"].size() == 2);
    CHECK(doc["error"]["detail"]["violations"][0]["discrepancy"] == "1/2");
    CHECK(r.err.find("no-signalling") != std::string::npos);
}

TEST_CASE("model sources")
{
    CHECK(run({"fraction", "fixture:prbox"}).code == 10);
    CHECK(run({"fraction", "triangle"}).code == 10);
    CHECK(run({"fraction", "fixtures/triangle.json", "--no-timings"}).code == 10);
    auto r = run({"fraction", "fixture:nope"});
    CHECK(r.code == 2);
    CHECK(run({"check", "/nonexistent/model.json"}).code == 2);
}

TEST_CASE("fraction, cohomology and logic")
{
    auto f = json::parse(run({"fraction", fixture("triangle_anticorrelated")}).out);
    CHECK(f["result"]["contextual_fraction"] == "1/1");
    auto b = run({"fraction", fixture("bell_uniform")});
    CHECK(b.code == 0);
    CHECK(json::parse(b.out)["result"]["contextual_fraction"] == "0/1");

    auto c = run({"cohomology", fixture("prbox")});
    CHECK(c.code == 10);
    auto cdoc = json::parse(c.out);
    CHECK(cdoc["result"]["cohomologically_witnessed"] == true);
    CHECK(cdoc["result"]["invariants"]["h1_rank"] == 1);
    auto csv = run({"cohomology", "triangle", "--format", "csv"});
    CHECK(csv.out.rfind("context,section,vanishes\n\"{x,y}\",01,false\n", 0) == 0);

    auto l = run({"logic", "triangle", "--prop", "(x=0 & y=0) | (x=1 & y=1)"});
    CHECK(l.code == 0);
    auto ldoc = json::parse(l.out);
    CHECK(ldoc["result"]["mode"] == "vi");
    CHECK(ldoc["result"]["profile"][0]["value"] == "F");
    CHECK(ldoc["result"]["profile"][1]["value"] == "U");
    CHECK(ldoc["result"]["profile"][2]["value"] == "U");
    CHECK(run({"logic", "triangle", "--prop", "q=1"}).code == 2);
    CHECK(run({"logic", "triangle"}).code == 2);
}

TEST_CASE("float mode override")
{
    auto r = run({"fraction", fixture("prbox"), "--mode", "float"});
    auto doc = json::parse(r.out);
    CHECK(doc["mode"] == "float");
    CHECK(doc["result"]["contextual_fraction"].get<double>() == doctest::Approx(1.0));
    CHECK(run({"fraction", fixture("prbox"), "--mode", "double"}).code == 2);
}

TEST_CASE("evolve CSV follows the free Gaussian law")
{
    auto r = run({"evolve", "--lambda", "1", "--initial", "gaussian:0,0.5", "--t-final", "1", "--record-every", "50"});
    REQUIRE(r.code == 0);
    std::istringstream in{r.out};
    std::string line;
    std::getline(in, line);
    CHECK(line == "t,norm,mean_x,width,visibility");
    int rows = 0;
    while (std::getline(in, line)) {
        double t, n, mx, w, v;
        REQUIRE(std::sscanf(line.c_str(), "%lf,%lf,%lf,%lf,%lf", &t, &n, &mx, &w, &v) == 5);
        CHECK(std::abs(w / oracle::free_gaussian_width(0.5, t) - 1) < 0.01);
        CHECK(std::abs(n - 1) < 1e-10);
        ++rows;
    }
    CHECK(rows > 10);
}

TEST_CASE("evolve options and failures")
{
    auto dir = std::filesystem::temp_directory_path();
    auto frames = (dir / "sheafctx_cli_test.frames").string();
    auto r = run({"evolve", "--lambda", "1", "--t-final", "0.01", "--frames", frames, "--format", "json", "--no-timings"});
    CHECK(r.code == 0);
    auto doc = json::parse(r.out);
    CHECK(doc["result"]["frames"]["count"].get<int>() >= 2);
    CHECK(std::filesystem::file_size(frames) > 16);
    std::filesystem::remove(frames);

    auto s = run({"evolve", "--sigma", "0.5", "--initial", "two-gaussian:8,0.5,0.2", "--length", "40", "--t-final", "0.05",
        "--format", "json"});
    CHECK(s.code == 0);
    auto sdoc = json::parse(s.out);
    CHECK(sdoc["result"]["parameters"]["lambda"] == 0.5);
    CHECK(sdoc["result"]["parameters"]["hbar_sigma_mismatch"] == 0.5);
    CHECK(s.err.find("hbar - m*sigma") != std::string::npos);

    CHECK(run({"evolve", "--lambda", "1", "--dt", "1"}).code == 3);
    CHECK(run({"evolve", "--lambda", "2"}).code == 2);
    CHECK(run({"evolve", "--initial", "square:1"}).code == 2);
    CHECK(run({"evolve", "--potential", "harmonic:1", "--t-final", "0.01"}).code == 0);
}

TEST_CASE("budgets surface as exit 3")
{
    CHECK(run({"check", fixture("prbox"), "--budget-nodes", "1"}).code == 3);
    CHECK(run({"fraction", fixture("prbox"), "--budget-pivots", "1"}).code == 3);
    CHECK(run({"cohomology", fixture("prbox"), "--budget-matrix", "2"}).code == 3);
}

TEST_CASE("fixtures subcommands")
{
    auto list = run({"fixtures", "list"});
    CHECK(list.code == 0);
    for (auto name : {"prbox", "bell_uniform", "triangle_anticorrelated", "deterministic", "signalling"})
        CHECK(list.out.find(name) != std::string::npos);
    auto show = run({"fixtures", "show", "prbox"});
    CHECK(show.out == sheafctx::read_text_file(fixture("prbox")));
    CHECK(run({"fixtures", "show", "nope"}).code == 2);
}

TEST_CASE("reports are byte-identical without timings")
{
    for (auto cmd : {"check", "fraction", "cohomology"}) {
        auto a = run({cmd, fixture("triangle_anticorrelated"), "--no-timings", "--seed", "3"});
        auto b = run({cmd, fixture("triangle_anticorrelated"), "--no-timings", "--seed", "3", "--threads", "2"});
        CHECK(a.out == b.out);
    }
}

TEST_CASE("output file and argument errors")
{
    auto path = (std::filesystem::temp_directory_path() / "sheafctx_cli_test.json").string();
    auto r = run({"check", fixture("prbox"), "--output", path, "--no-timings"});
    CHECK(r.code == 10);
    CHECK(r.out.empty());
    CHECK(json::parse(sheafctx::read_text_file(path))["result"]["strongly_contextual"] == true);
    std::filesystem::remove(path);

    CHECK(run({}).code == 2);
    CHECK(run({"frobnicate"}).code == 2);
    CHECK(run({"check"}).code == 2);
    CHECK(run({"--help"}).code == 0);
    CHECK(run({"check", fixture("prbox"), "--format", "xml"}).code == 2);
}
