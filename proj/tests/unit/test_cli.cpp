#include "powexp/cli.hpp"

#include <doctest.h>
#include <json.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

using powexp::cli::run;
using Json = nlohmann::json;

namespace {

struct Outcome {
    int code;
    std::string out;
    std::string err;
};

Outcome invoke(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = run(args, out, err);
    return {code, out.str(), err.str()};
}

Json json_of(const std::vector<std::string>& args) {
    const Outcome o = invoke(args);
    INFO(o.err);
    REQUIRE(o.code == 0);
    return Json::parse(o.out);
}

std::vector<std::vector<std::string>> csv_rows(const std::string& text) {
    std::vector<std::vector<std::string>> rows;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        std::vector<std::string> cells;
        std::istringstream ls(line);
        std::string cell;
        while (std::getline(ls, cell, ','))
            cells.push_back(cell);
        rows.push_back(cells);
    }
    return rows;
}

std::filesystem::path scratch(const std::string& name) {
    auto dir = std::filesystem::temp_directory_path() / "powexp_cli_test";
    std::filesystem::create_directories(dir);
    return dir / name;
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace

TEST_CASE("format_number") {
    using powexp::cli::format_number;
    CHECK(format_number(0.1) == "0.10000000000000001");
    CHECK(format_number(1.0) == "1");
    CHECK(format_number(-2.5e-300) == "-2.5e-300");
    CHECK(format_number(INFINITY) == "inf");
    CHECK(format_number(-INFINITY) == "-inf");
    CHECK(std::stod(format_number(std::exp(-1.0))) == std::exp(-1.0));
}

TEST_CASE("integrate") {
    const Json j = json_of({"integrate", "--n", "2", "--sign", "neg", "--from", "0", "--to", "inf", "--format", "json"});
    CHECK(j["command"] == "integrate");
    CHECK(std::abs(j["outputs"]["value"].get<double>() - 0.88622692545275801) <= 1e-12);
    CHECK(j["inputs"]["to"] == "inf");
    CHECK(j["diagnostics"].contains("terms_used"));

    const Json both = json_of({"integrate", "--n", "2", "--from", "-inf", "--to", "+inf"});
    CHECK(std::abs(both["outputs"]["value"].get<double>() - 1.7724538509055160) <= 1e-12);

    const Outcome div = invoke({"integrate", "--n", "2", "--sign", "pos", "--from", "0", "--to", "inf"});
    CHECK(div.code == 3);
    CHECK(div.out.empty());
    CHECK(div.err.rfind("error: divergent: ", 0) == 0);
    CHECK(std::count(div.err.begin(), div.err.end(), '\n') == 1);

    CHECK(invoke({"integrate", "--n", "2", "--from", "abc", "--to", "1"}).code == 2);
    CHECK(invoke({"integrate", "--n", "2", "--from", "1", "--to", "0"}).code == 3);
}

TEST_CASE("numeric inputs are echoed bit-exactly") {
    const std::vector<std::string> literals{"0.1", "1e-7", "0.30000000000000004", "1.2345678901234567"};
    for (const std::string& s : literals) {
        const Json j = json_of({"antideriv", "--n", "3", "--x", s});
        CHECK(j["inputs"]["x"].get<double>() == std::stod(s));
    }
    const Json t = json_of({"pdf", "--n", "4", "--x", "0.7", "--tol", "3.3e-11"});
    CHECK(t["inputs"]["tol"].get<double>() == 3.3e-11);
}

TEST_CASE("antideriv forms agree") {
    const Json a = json_of({"antideriv", "--n", "4", "--sign", "pos", "--x", "0.5"});
    const Json m = json_of({"antideriv", "--n", "4", "--sign", "pos", "--x", "0.5", "--form", "maclaurin"});
    CHECK(std::abs(a["outputs"]["value"].get<double>() - 0.50636009083883687) <= 1e-12);
    CHECK(std::abs(m["outputs"]["value"].get<double>() - 0.50636009083883687) <= 1e-12);
    CHECK(invoke({"antideriv", "--n", "6", "--sign", "pos", "--x", "2"}).code == 3);
    CHECK(invoke({"antideriv", "--n", "2", "--x", "1", "--form", "taylor"}).code == 2);
}

TEST_CASE("pdf and cdf") {
    const Json p = json_of({"pdf", "--n", "2", "--x", "7", "--m", "5", "--sigma", "2"});
    CHECK(std::abs(p["outputs"]["pdf"].get<double>() - 0.5 * 0.24197072451914335) <= 1e-15);
    CHECK(p["outputs"]["z"].get<double>() == 1.0);

    const Json c = json_of({"cdf", "--n", "2", "--x", "1"});
    CHECK(std::abs(c["outputs"]["cdf"].get<double>() - 0.84134474606854295) <= 1e-10);

    const Outcome odd = invoke({"pdf", "--n", "3", "--x", "1"});
    CHECK(odd.code == 3);
    CHECK(odd.err.rfind("error: domain: ", 0) == 0);
    CHECK(invoke({"pdf", "--n", "2", "--x", "1", "--sigma", "0"}).code == 3);

    const Outcome capped = invoke({"cdf", "--n", "2", "--x", "2", "--max-terms", "2"});
    CHECK(capped.code == 4);
    CHECK(capped.err.rfind("error: non_converged: ", 0) == 0);
    CHECK_FALSE(capped.out.empty());
}

TEST_CASE("moments") {
    const Json g = json_of({"moments", "--n", "4", "--order", "8"});
    CHECK(std::abs(g["outputs"]["value"].get<double>() - 5.0) <= 1e-12);
    const Json r = json_of({"moments", "--n", "6", "--order", "18", "--method", "recurrence"});
    CHECK(r["outputs"]["value"].get<double>() == 91.0);
    CHECK(r["diagnostics"]["fundamental_order"] == 0);
    const Json k = json_of({"moments", "--n", "2", "--order", "4", "--method", "kn", "--sigma", "2"});
    CHECK(k["outputs"]["value"].get<double>() == 48.0);
    const Json odd = json_of({"moments", "--n", "2", "--order", "7"});
    CHECK(odd["outputs"]["value"].get<double>() == 0.0);
    CHECK(invoke({"moments", "--n", "4", "--order", "6", "--method", "kn"}).code == 3);
    CHECK(invoke({"moments", "--n", "4", "--order", "6", "--method", "magic"}).code == 2);
}

TEST_CASE("shape") {
    const Json s = json_of({"shape", "--n", "4", "--moments", "m4=1,m5=0,m8=5"});
    CHECK(s["outputs"]["kurtosis"].get<double>() == 5.0);
    CHECK(s["outputs"]["kurtosis_excess"].get<double>() == 0.0);
    CHECK(s["outputs"]["skew_coeff"].get<double>() == 0.0);

    const auto data = scratch("samples.txt");
    {
        std::ofstream f(data);
        f << "-1 1\n-1,1\n";
    }
    const Json d = json_of({"shape", "--n", "2", "--data", data.string()});
    CHECK(d["outputs"]["kurtosis"].get<double>() == 1.0);
    CHECK(d["diagnostics"]["sample_size"] == 4);

    CHECK(invoke({"shape", "--n", "2"}).code == 2);
    CHECK(invoke({"shape", "--n", "2", "--moments", "m2=1", "--data", data.string()}).code == 2);
    CHECK(invoke({"shape", "--n", "2", "--moments", "m2=1,m4=3"}).code == 3);
    CHECK(invoke({"shape", "--n", "2", "--moments", "q2=1"}).code == 2);
    CHECK(invoke({"shape", "--n", "2", "--data", scratch("missing.txt").string()}).code == 2);
}

TEST_CASE("mvpdf") {
    const Json j = json_of({"mvpdf", "--n", "2,4,6", "--z", "0,0,0"});
    CHECK(std::abs(j["outputs"]["value"].get<double>() - 0.062216490596988740) <= 1e-16);
    CHECK(j["inputs"]["n"] == Json::array({2, 4, 6}));
    const Outcome mismatch = invoke({"mvpdf", "--n", "2,4", "--z", "0,0,0"});
    CHECK(mismatch.code == 3);
    CHECK(mismatch.err.rfind("error: invalid_input: ", 0) == 0);
}

TEST_CASE("ode-check") {
    const Json a = json_of({"ode-check", "--n", "2", "--eq", "13"});
    CHECK(a["outputs"]["particular"] == "f");
    CHECK(a["outputs"]["pairing"]["f"] == "13");
    CHECK(a["outputs"]["pairing"]["g"] == "14");
    CHECK(a["outputs"]["max_abs_residual"].get<double>() <= 1e-8);
    CHECK(a["outputs"]["rows"].size() == 23);

    const Json b = json_of({"ode-check", "--n", "3", "--eq", "14", "--series", "g", "--k1", "2", "--k2", "-3"});
    CHECK(b["outputs"]["max_abs_residual"].get<double>() <= 1e-8);

    const Json wrong = json_of({"ode-check", "--n", "3", "--eq", "14", "--series", "f"});
    CHECK(wrong["outputs"]["max_abs_residual"].get<double>() > 1e-3);

    const Outcome csv = invoke({"ode-check", "--n", "2", "--eq", "14", "--format", "csv", "--grid-points", "5"});
    CHECK(csv.code == 0);
    const auto rows = csv_rows(csv.out);
    REQUIRE(rows.size() == 6);
    CHECK(rows[0] == std::vector<std::string>{"x", "residual"});

    CHECK(invoke({"ode-check", "--n", "2", "--eq", "15"}).code == 2);
    CHECK(invoke({"ode-check", "--n", "2", "--grid-from", "0", "--grid-to", "1"}).code == 3);
}

TEST_CASE("stirling") {
    const Json s = json_of({"stirling", "--n", "5"});
    CHECK(s["outputs"]["exact"] == "3628800");
    CHECK(std::abs(s["outputs"]["rel_err50"].get<double>() + 0.0082959604439385137) <= 1e-12);
    CHECK(std::abs(s["outputs"]["ratio_49_over_50"].get<double>() / std::sqrt(10.0) - 1) <= 1e-12);
    CHECK(invoke({"stirling", "--n", "0"}).code == 3);
}

TEST_CASE("figures") {
    const Outcome f1 = invoke({"figures", "--which", "1"});
    REQUIRE(f1.code == 0);
    const auto rows1 = csv_rows(f1.out);
    REQUIRE(rows1.size() == 402);
    CHECK(rows1[0] == std::vector<std::string>{"x", "y_n2", "y_n4", "y_n6"});
    CHECK(rows1[1][0] == "-2");
    CHECK(rows1[401][0] == "2");

    const Outcome f2 = invoke({"figures", "--which", "2"});
    const auto rows2 = csv_rows(f2.out);
    CHECK(rows2[0] == std::vector<std::string>{"x", "y_n100", "y_limit"});
    const std::string inv_e = powexp::cli::format_number(std::exp(-1.0));
    for (const auto& row : rows2)
        if (row[0] == "1" || row[0] == "-1") {
            CHECK(row[1] == inv_e);
            CHECK(row[2] == inv_e);
        }

    const Outcome f3 = invoke({"figures", "--which", "3", "--format", "json"});
    const Json j3 = Json::parse(f3.out);
    CHECK(j3["outputs"]["rows"].size() == 20);
    CHECK(j3["outputs"]["rows"][0][1].get<double>() == 1.0);

    CHECK(invoke({"figures", "--which", "4"}).code == 2);
    CHECK(invoke({"figures", "--which", "2", "--n", "7"}).code == 3);
}

TEST_CASE("figures --out writes byte-identical files") {
    const auto a = scratch("fig2_a.csv");
    const auto b = scratch("fig2_b.csv");
    const Outcome first = invoke({"figures", "--which", "2", "--n", "100", "--out", a.string()});
    const Outcome second = invoke({"figures", "--which", "2", "--n", "100", "--out", b.string()});
    CHECK(first.code == 0);
    CHECK(second.code == 0);
    CHECK(first.out.empty());
    CHECK(slurp(a) == slurp(b));
    CHECK(slurp(a) == invoke({"figures", "--which", "2"}).out);

    const Outcome bad = invoke({"figures", "--which", "1", "--out", "/nonexistent-dir/x.csv"});
    CHECK(bad.code == 3);
    CHECK(bad.err.rfind("error: io: ", 0) == 0);
}

TEST_CASE("repeated invocations are identical") {
    const std::vector<std::vector<std::string>> cmds{
        {"integrate", "--n", "3", "--sign", "pos", "--from", "-inf", "--to", "0.5"},
        {"cdf", "--n", "6", "--x", "0.3", "--format", "csv"},
        {"ode-check", "--n", "4", "--eq", "13"},
        {"figures", "--which", "1"},
    };
    for (const auto& c : cmds)
        CHECK(invoke(c).out == invoke(c).out);
}

TEST_CASE("usage and help") {
    CHECK(invoke({}).code == 2);
    CHECK(invoke({"frobnicate"}).code == 2);
    CHECK(invoke({"pdf", "--x", "1"}).code == 2);
    const Outcome help = invoke({"--help"});
    CHECK(help.code == 0);
    CHECK(help.out.find("integrate") != std::string::npos);
    const Outcome sub = invoke({"moments", "--help"});
    CHECK(sub.code == 0);
    CHECK(sub.out.find("--method") != std::string::npos);
    const Outcome bad_tol = invoke({"pdf", "--n", "2", "--x", "1", "--tol", "-1"});
    CHECK(bad_tol.code == 2);
    CHECK(bad_tol.err.find('\n') == bad_tol.err.size() - 1);
}
