#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <sstream>

#include <json.hpp>

#include "fixtures.hpp"
#include "oesnn/detector.hpp"
#include "oesnn/report.hpp"

namespace {

using oesnn::testing::read_file;
using oesnn::testing::TempDir;

struct Result {
    int code = -1;
    std::string out;
    std::string err;
};

// Runs the CLI with `args`, feeding `input` on stdin.
Result run(const TempDir& dir, const std::string& args, const std::string& input = "") {
    const auto in = dir.write("stdin.txt", input);
    const auto out = dir.path() / "stdout.txt";
    const auto err = dir.path() / "stderr.txt";
    const std::string cmd = std::string("\"") + OESNN_CLI_PATH + "\" " + args + " < \"" + in.string() + "\" > \"" +
                            out.string() + "\" 2> \"" + err.string() + "\"";
    const int status = std::system(cmd.c_str());
    Result r;
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.out = read_file(out);
    r.err = read_file(err);
    return r;
}

std::string wave(int n) {
    std::ostringstream os;
    for (int i = 0; i < n; ++i) os << ((i * 37) % 101) / 100.0 + (i == n / 2 ? 3.0 : 0.0) << "\n";
    return os.str();
}

std::string yahoo_csv(int n) {
    std::ostringstream os;
    os << "timestamp,value,is_anomaly\n";
    for (int i = 0; i < n; ++i) os << i << "," << ((i * 13) % 29) / 10.0 + (i == 70 ? 9 : 0) << "," << (i == 70) << "\n";
    return os.str();
}

std::string nab_csv(int n) {
    std::ostringstream os;
    os << "timestamp,value\n";
    for (int i = 0; i < n; ++i) {
        os << "2014-01-01 " << (10 + i / 60) << ":" << (i % 60 < 10 ? "0" : "") << i % 60 << ":00,"
           << ((i * 7) % 23) / 5.0 << "\n";
    }
    return os.str();
}

TEST(Cli, DetectIsDeterministic) {
    TempDir dir("cli");
    const auto a = run(dir, "detect --window-size 10 --seed 4", wave(200));
    const auto b = run(dir, "detect --window-size 10 --seed 4", wave(200));
    ASSERT_EQ(a.code, 0) << a.err;
    EXPECT_EQ(a.out, b.out);
    const auto c = run(dir, "detect --window-size 10 --seed 5", wave(200));
    EXPECT_NE(a.out, c.out);
}

TEST(Cli, DetectEmitsOneRecordPerValue) {
    TempDir dir("cli");
    const auto r = run(dir, "detect --window-size 10", wave(50));
    ASSERT_EQ(r.code, 0) << r.err;
    std::istringstream lines(r.out);
    std::string line;
    std::getline(lines, line);
    EXPECT_EQ(line.rfind("# oesnn detect config: ", 0), 0u);
    std::size_t n = 0;
    while (std::getline(lines, line)) {
        const auto j = nlohmann::json::parse(line);
        EXPECT_EQ(j["t"], n);
        ++n;
    }
    EXPECT_EQ(n, 50u);

    // shorter than the window: warm-up records still come out
    const auto s = run(dir, "detect --window-size 10 --format csv", "1\n2\n3\n");
    ASSERT_EQ(s.code, 0) << s.err;
    EXPECT_NE(s.out.find("t,x,y,e,u\n0,1,"), std::string::npos);
    EXPECT_NE(s.out.find("\n2,3,"), std::string::npos);
}

TEST(Cli, DetectReadsCsvColumns) {
    TempDir dir("cli");
    const auto plain = run(dir, "detect --window-size 5 --format csv", "1\n2\n3\n4\n5\n6\n7\n");
    const auto csv = run(dir, "detect --window-size 5 --format csv --value-column v", "ts,v\na,1\nb,2\nc,3\nd,4\ne,5\nf,6\ng,7\n");
    ASSERT_EQ(csv.code, 0) << csv.err;
    EXPECT_EQ(plain.out, csv.out);
}

TEST(Cli, MalformedInputExitsThree) {
    TempDir dir("cli");
    auto r = run(dir, "detect", "abc\n");
    EXPECT_EQ(r.code, 3);
    EXPECT_NE(r.err.find("line 1"), std::string::npos) << r.err;
    r = run(dir, "detect", "1\n2\nx\n");
    EXPECT_EQ(r.code, 3);
    EXPECT_NE(r.err.find("line 3"), std::string::npos) << r.err;
    r = run(dir, "detect", "1\nnan\n");
    EXPECT_EQ(r.code, 3);
    r = run(dir, "detect --input /nonexistent/file.csv");
    EXPECT_EQ(r.code, 3);
}

TEST(Cli, HeaderEchoesDefaults) {
    TempDir dir("cli");
    const auto r = run(dir, "detect", "1\n");
    ASSERT_EQ(r.code, 0) << r.err;
    const auto first = r.out.substr(0, r.out.find('\n'));
    const std::string prefix = "# oesnn detect config: ";
    ASSERT_EQ(first.rfind(prefix, 0), 0u);
    EXPECT_EQ(nlohmann::json::parse(first.substr(prefix.size())), nlohmann::json::parse(oesnn::config_json({})));
}

TEST(Cli, InvalidConfigExitsTwo) {
    TempDir dir("cli");
    for (const char* args : {"detect --epsilon 1.5", "detect --window-size 0", "detect --mod 1", "detect --ni-size 2",
                             "detect --spread iqr", "detect --bogus", "grid --input x.csv --epsilons 1",
                             "grid --input x.csv --window-sizes 40,20"}) {
        const auto r = run(dir, args, "1\n");
        EXPECT_EQ(r.code, 2) << args << ": " << r.err;
        EXPECT_TRUE(r.out.empty()) << args;
    }
}

TEST(Cli, HelpListsEveryField) {
    TempDir dir("cli");
    const auto r = run(dir, "detect --help");
    EXPECT_EQ(r.code, 0);
    for (const char* flag : {"--window-size", "--epsilon", "--ni-size", "--no-size", "--ts", "--mod", "--c", "--sim",
                             "--xi", "--seed", "--spread", "--strict-threshold", "--correction"}) {
        EXPECT_NE(r.out.find(flag), std::string::npos) << flag;
    }
}

TEST(Cli, GridPresets) {
    TempDir dir("cli");
    const auto yahoo = dir.write("real/one.csv", yahoo_csv(120));
    auto r = run(dir, "grid --format yahoo --input " + yahoo.string());
    ASSERT_EQ(r.code, 0) << r.err;
    auto doc = nlohmann::json::parse(r.out);
    EXPECT_EQ(doc["grid"].size(), 400u);
    EXPECT_EQ(doc["file"], "real/one.csv");

    const auto nab = dir.write("art/two.csv", nab_csv(700));
    r = run(dir, "grid --format nab --no-labels --input " + nab.string());
    ASSERT_EQ(r.code, 0) << r.err;
    doc = nlohmann::json::parse(r.out);
    EXPECT_EQ(doc["grid"].size(), 36u);
}

TEST(Cli, GridIsIndependentOfJobs) {
    TempDir dir("cli");
    const auto yahoo = dir.write("real/one.csv", yahoo_csv(300));
    const std::string base = "grid --format yahoo --window-sizes 20,40,60 --epsilons 2,3,4 --input " + yahoo.string();
    const auto one = run(dir, base + " --jobs 1 --points " + (dir.path() / "p1.jsonl").string());
    const auto eight = run(dir, base + " --jobs 8 --points " + (dir.path() / "p8.jsonl").string());
    ASSERT_EQ(one.code, 0) << one.err;
    EXPECT_EQ(one.out, eight.out);
    EXPECT_EQ(read_file(dir.path() / "p1.jsonl"), read_file(dir.path() / "p8.jsonl"));
}

TEST(Cli, BenchAggregatesCategories) {
    TempDir dir("cli");
    dir.write("data/real/a.csv", yahoo_csv(150));
    dir.write("data/real/b.csv", yahoo_csv(200));
    const auto out = dir.path() / "out";
    const auto r = run(dir, "bench --format yahoo --window-sizes 20,40 --epsilons 2,3 --corpus " +
                                (dir.path() / "data").string() + " --out-dir " + out.string());
    ASSERT_EQ(r.code, 0) << r.err;
    double sum = 0;
    for (const char* f : {"files/real/a.csv.json", "files/real/b.csv.json"}) {
        const auto doc = nlohmann::json::parse(read_file(out / f));
        sum += doc["best"]["metrics"]["f_measure"].get<double>();
    }
    std::istringstream csv(read_file(out / "categories.csv"));
    std::string header, row;
    std::getline(csv, header);
    std::getline(csv, row);
    EXPECT_EQ(header, "schema_version,category,files,mean_precision,mean_recall,mean_f_measure");
    EXPECT_EQ(row.rfind("1,real,2,", 0), 0u);
    EXPECT_DOUBLE_EQ(std::stod(row.substr(row.rfind(',') + 1)), sum / 2);
    EXPECT_EQ(r.out, read_file(out / "categories.csv"));
    EXPECT_TRUE(std::filesystem::exists(out / "points/real/a.csv.jsonl"));
    EXPECT_TRUE(nlohmann::json::parse(read_file(out / "manifest.json"))["failed"].empty());
}

TEST(Cli, BenchReportsBadFiles) {
    TempDir dir("cli");
    dir.write("data/real/a.csv", yahoo_csv(150));
    dir.write("data/real/bad.csv", "timestamp,value,is_anomaly\n1,zz,0\n");
    const auto out = dir.path() / "out";
    const auto r = run(dir, "bench --format yahoo --window-sizes 20 --epsilons 2 --corpus " +
                                (dir.path() / "data").string() + " --out-dir " + out.string());
    EXPECT_EQ(r.code, 3);
    const auto manifest = nlohmann::json::parse(read_file(out / "manifest.json"));
    EXPECT_EQ(manifest["failed"].size(), 1u);
    EXPECT_EQ(manifest["evaluated"].size(), 1u);
}

}  // namespace
