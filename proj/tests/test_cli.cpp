#include <doctest.h>

#include <json.hpp>

#include <sstream>
#include <string>
#include <vector>

#include "qdescent/cli.hpp"

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run(std::vector<std::string> args) {
    std::ostringstream out;
    std::ostringstream err;
    const int code = qdescent::cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& text) {
    std::vector<std::string> result;
    std::istringstream in(text);
    for (std::string line; std::getline(in, line);) result.push_back(line);
    return result;
}

// Renders a JSON step record the way the text trace does.
std::string render(const nlohmann::ordered_json& record) {
    std::string line;
    for (const auto& [key, value] : record.items()) {
        if (!line.empty()) line += ' ';
        line += key + '=';
        if (value.is_array()) {
            line += '(';
            for (std::size_t i = 0; i < value.size(); ++i) line += (i ? "," : "") + value[i].get<std::string>();
            line += ')';
        } else if (value.is_number()) {
            line += value.dump();
        } else {
            line += value.get<std::string>();
        }
    }
    return line;
}

const std::vector<std::string> kWorked{"descend", "--domain", "Z", "--form", "x^2+y^2-5", "--point", "-11,2/5"};

std::vector<std::string> with(std::vector<std::string> base, std::initializer_list<std::string> extra) {
    base.insert(base.end(), extra);
    return base;
}

} // namespace

TEST_CASE("descend prints the integral zero") {
    const Run r = run(kWorked);
    CHECK(r.code == qdescent::cli::kOk);
    CHECK(r.out == "(-1,-2)\n");
    CHECK(r.err.empty());
}

TEST_CASE("descend trace lines") {
    const Run r = run(with(kWorked, {"--trace"}));
    REQUIRE(r.code == 0);
    const auto ls = lines(r.out);
    REQUIRE(ls.size() == 2);
    CHECK(ls[0] == "step=0 b=5 norm_b=5 y=(-2,0) v=(-1,2) A=5 B=4 C=-1 b_next=1 norm_b_next=1 x_next=(-1,-2)");
    CHECK(ls[1] == "(-1,-2)");
}

TEST_CASE("descend json document") {
    const Run r = run(with(kWorked, {"--format", "json"}));
    REQUIRE(r.code == 0);
    const auto doc = nlohmann::ordered_json::parse(r.out);
    CHECK(doc["domain"] == "Z");
    CHECK(doc["form"] == "x1^2+x2^2-5");
    CHECK(doc["start"] == "(-11,2)/5");
    CHECK(doc["result"] == "(-1,-2)");
    REQUIRE(doc["steps"].size() == 1);
    CHECK(doc["steps"][0]["A"] == "5");
    CHECK(doc["steps"][0]["y"] == nlohmann::ordered_json::array({"-2", "0"}));
}

TEST_CASE("text and json carry the same trace") {
    const std::vector<std::vector<std::string>> cases{
        kWorked,
        {"descend", "--domain", "Z", "--form", "x^2+y^2+z^2-13", "--point", "1,18,0/5"},
        {"represent", "--domain", "Z", "--form", "x^2+y^2+z^2", "--point", "1,18,0/5"},
        {"three-squares", "89", "--seed", "4"},
        {"descend", "--domain", "Fpt:2", "--form", "x^2+(t+1)*y^2+x", "--point", "1,1/t"},
    };
    for (const auto& args : cases) {
        const Run text = run(with(args, {"--trace"}));
        const Run json = run(with(args, {"--format", "json"}));
        REQUIRE(text.code == 0);
        REQUIRE(json.code == 0);
        const auto doc = nlohmann::ordered_json::parse(json.out);
        const auto ls = lines(text.out);
        std::vector<std::string> step_lines;
        for (const auto& l : ls)
            if (l.rfind("step=", 0) == 0) step_lines.push_back(l);
        REQUIRE(step_lines.size() == doc["steps"].size());
        for (std::size_t i = 0; i < step_lines.size(); ++i) CHECK(step_lines[i] == render(doc["steps"][i]));
        const std::string result = doc["result"].get<std::string>();
        bool found = false;
        for (const auto& l : ls) found = found || l == result || l == "result=" + result;
        CHECK_MESSAGE(found, result);
    }
}

TEST_CASE("represent") {
    const Run r = run({"represent", "--domain", "Z", "--form", "x^2+y^2+z^2", "--point", "1,18,0/5"});
    CHECK(r.code == 0);
    CHECK(r.out.find("(3,-2,0)") != std::string::npos);
    CHECK(r.out.find("13") != std::string::npos);
    const Run half = run({"represent", "--domain", "Z", "--form", "x^2+y^2+z^2", "--point", "1,0,0/2"});
    CHECK(half.code == qdescent::cli::kInputError);
}

TEST_CASE("exit codes") {
    using namespace qdescent::cli;
    CHECK(run({"descend", "--domain", "Z", "--form", "x^2+y^2-5", "--point", "1,1/2"}).code == kInputError);
    CHECK(run({"descend", "--domain", "Z", "--form", "x^3", "--point", "1/2"}).code == kInputError);
    CHECK(run({"descend", "--domain", "Q", "--form", "x^2", "--point", "1/2"}).code == kInputError);
    CHECK(run({"descend", "--form", "x^2"}).code == kInputError);
    CHECK(run({}).code == kInputError);
    const Run nf = run({"descend", "--domain", "Z", "--form", "w^2+x^2+y^2+z^2-1", "--point", "1,1,1,1/2"});
    CHECK(nf.code == kOracleNotFound);
    CHECK(nf.err.find("min norm 1") != std::string::npos);
    const Run seven = run({"three-squares", "7"});
    CHECK(seven.code == kNotRepresentable);
    CHECK(seven.out.find("not representable") != std::string::npos);
    CHECK(run({"--help"}).code == kOk);
}

TEST_CASE("parse errors carry the offset") {
    const Run r = run({"descend", "--domain", "Z", "--form", "x^2+i*y^2", "--point", "1,1/2"});
    CHECK(r.code == qdescent::cli::kInputError);
    CHECK(r.err.find("offset 4") != std::string::npos);
}

TEST_CASE("checks") {
    const Run e = run({"check", "euclidean", "--domain", "Z", "--form", "w^2+x^2+y^2+z^2", "--height", "2", "--box", "1"});
    // exit 0 iff no failures
    CHECK(e.code == qdescent::cli::kInputError);
    CHECK(lines(e.out).front() == "checked=80 failures=16");
    CHECK(e.out.find("(1,1,1,1)/2 window=2 min_norm=1") != std::string::npos);

    const Run ej = run({"check", "euclidean", "--domain", "Fpt:2", "--form", "x^2+t*y^2", "--height", "2",
                        "--box", "2", "--format", "json"});
    REQUIRE(ej.code == 0);
    const auto doc = nlohmann::ordered_json::parse(ej.out);
    CHECK(doc["failures"].empty());
    CHECK(doc["checked"].get<long>() > 0);

    const Run axioms = run({"check", "norm-axioms", "--domain", "Zi", "--samples", "200"});
    CHECK(axioms.code == 0);
    CHECK(axioms.out.find("checked=200 failures=0") != std::string::npos);

    const Run n2 = run({"check", "n2", "--domain", "Z", "--form", "x^2+y^2+z^2", "--height", "10"});
    CHECK(n2.code == 0);
    CHECK(n2.out.find("failures=0") != std::string::npos);

    const Run adc = run({"check", "adc", "--domain", "Z", "--form", "w^2+x^2+y^2+z^2", "--height", "2", "--box", "1"});
    CHECK(adc.code == 0);
    CHECK(adc.out.find("note:") != std::string::npos);
}

TEST_CASE("three-squares") {
    const Run r = run({"three-squares", "13"});
    CHECK(r.code == 0);
    CHECK(lines(r.out).back() == "result=(0,2,3)");
}

TEST_CASE("repeated runs are byte-identical") {
    const std::vector<std::vector<std::string>> cases{
        with(kWorked, {"--format", "json"}),
        {"three-squares", "89", "--seed", "4", "--format", "json"},
        {"check", "euclidean", "--domain", "Z", "--form", "w^2+x^2+y^2+z^2", "--height", "2", "--box", "1",
         "--format", "json"},
        {"check", "norm-axioms", "--domain", "Fpt:3", "--samples", "100", "--seed", "9", "--format", "json"},
    };
    for (const auto& args : cases) CHECK(run(args).out == run(args).out);
}
