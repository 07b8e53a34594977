#include <gtest/gtest.h>

#include <array>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

namespace {

struct Run {
    int code = -1;
    std::string out;
};

// Runs the CLI with stderr folded into the captured output.
Run cli(const std::string& args) {
    std::string cmd = std::string(DEGONE_CLI_PATH) + " " + args + " 2>&1";
    Run r;
    FILE* p = popen(cmd.c_str(), "r");
    if (!p) return r;
    std::array<char, 4096> buf{};
    std::size_t n;
    while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) r.out.append(buf.data(), n);
    int status = pclose(p);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

std::string golden(const std::string& name) {
    std::ifstream f(std::string(DEGONE_GOLDEN_DIR) + "/" + name, std::ios::binary);
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

std::string golden_path(const std::string& name) { return std::string(DEGONE_GOLDEN_DIR) + "/" + name; }

int data_rows(const std::string& csv) {
    int rows = 0;
    bool header_seen = false;
    std::istringstream is(csv);
    for (std::string line; std::getline(is, line);) {
        if (line.empty() || line[0] == '#') continue;
        if (!header_seen) {
            header_seen = true;
            continue;
        }
        ++rows;
    }
    return rows;
}

const std::string kGauss = "gm-scan --poly \"x^2+1\" --base \"1+2t\" --f \"x+1\"";

}  // namespace

TEST(Cli, FieldInfoGoldenRatio) {
    auto r = cli("field-info --poly \"x^2-x-1\" --bound 12");
    ASSERT_EQ(r.code, 0) << r.out;
    EXPECT_NE(r.out.find("disc: 5\n"), std::string::npos);
    EXPECT_NE(r.out.find("p=2: P(2,x^2 + x + 1)(e=1,f=2) inert sum_ef=2 ok"), std::string::npos) << r.out;
    EXPECT_NE(r.out.find("p=5: P(5,x + 2)(e=2,f=1) ramified"), std::string::npos) << r.out;
    EXPECT_EQ(r.out.find("FAIL"), std::string::npos);
}

TEST(Cli, FieldInfoGaussianAndReducible) {
    auto r = cli("field-info --poly \"x^2+1\" --bound 6");
    ASSERT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("p=3: P(3,x^2 + 1)(e=1,f=2) inert"), std::string::npos) << r.out;
    auto bad = cli("field-info --poly \"x^2-1\"");
    EXPECT_EQ(bad.code, 2);
    EXPECT_NE(bad.out.find("NotIrreducible"), std::string::npos);
    auto garbled = cli("field-info --poly \"x^2+*1\"");
    EXPECT_EQ(garbled.code, 2);
    EXPECT_NE(garbled.out.find("Parse"), std::string::npos) << garbled.out;
}

TEST(Cli, FactorJson) {
    auto r = cli("factor --poly \"x^2+1\" --base \"3\"");
    ASSERT_EQ(r.code, 0) << r.out;
    EXPECT_NE(r.out.find("\"p\": 3"), std::string::npos);
    EXPECT_NE(r.out.find("\"f\": 2"), std::string::npos);
    EXPECT_NE(r.out.find("\"norm\": \"9\""), std::string::npos);
}

TEST(Cli, HeightOfGoldenRatio) {
    auto r = cli("height --poly \"x^2-x-1\" --base \"t\"");
    ASSERT_EQ(r.code, 0) << r.out;
    EXPECT_NE(r.out.find("\"h_mahler\": \"0.2406059"), std::string::npos) << r.out;
}

TEST(Cli, FibDemoMatchesGolden) {
    auto r = cli("fib-demo --nmax 21");
    ASSERT_EQ(r.code, 0) << r.out;
    EXPECT_EQ(r.out, golden("fib_demo_21.csv"));
    EXPECT_NE(r.out.find("\n7,13,pass,pass,169,1\n"), std::string::npos);
    EXPECT_EQ(cli("fib-demo --nmax 8").code, 2);
}

TEST(Cli, GmScanRowsAndGolden) {
    auto r = cli(kGauss + " --nmax 40");
    ASSERT_EQ(r.code, 0) << r.out;
    EXPECT_EQ(data_rows(r.out), 40);
    EXPECT_NE(r.out.find("n,u,h_u,h_D,h_deg1,h_deg_gt1,norm_I,norm_J,c_u,flag_eps,skip\n"), std::string::npos);
    EXPECT_NE(r.out.find("# classification: clean"), std::string::npos);
    EXPECT_EQ(cli(kGauss + " --nmax 12").out, golden("gm_gauss_12.csv"));
}

TEST(Cli, GmScanBannerAndEmptyRange) {
    auto r = cli("gm-scan --poly \"x^2-x-1\" --base \"t^2\" --f \"x+1\" --nmax 3");
    ASSERT_EQ(r.code, 0) << r.out;
    EXPECT_NE(r.out.find("# classification: violates_b("), std::string::npos) << r.out;
    auto empty = cli(kGauss + " --nmin 5 --nmax 4");
    ASSERT_EQ(empty.code, 0);
    EXPECT_EQ(data_rows(empty.out), 0);
    EXPECT_NE(empty.out.find("n,u,h_u"), std::string::npos);
}

TEST(Cli, HeaderCarriesHashPrecisionTolerance) {
    auto r = cli(kGauss + " --nmax 2 --prec 256 --tol 1e-12");
    ASSERT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("# config_hash: "), std::string::npos);
    EXPECT_NE(r.out.find("# precision: 256"), std::string::npos);
    EXPECT_NE(r.out.find("# tolerance: 1e-12"), std::string::npos);
    auto other = cli(kGauss + " --nmax 3 --prec 256 --tol 1e-12");
    auto hash_of = [](const std::string& s) { return s.substr(s.find("# config_hash: "), 32); };
    EXPECT_NE(hash_of(r.out), hash_of(other.out));
}

TEST(Cli, JsonMirrorsCsv) {
    auto r = cli(kGauss + " --nmax 3 --format json");
    ASSERT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("\"rows\""), std::string::npos);
    EXPECT_NE(r.out.find("\"norm_J\""), std::string::npos);
    EXPECT_NE(r.out.find("\"config_hash\""), std::string::npos);
}

TEST(Cli, ScansAreDeterministic) {
    auto a = cli(kGauss + " --nmax 40");
    auto b = cli(kGauss + " --nmax 40 --threads 4");
    EXPECT_EQ(a.out, b.out);
    auto e1 = cli("ell-scan " + golden_path("ell_config.json"));
    auto e2 = cli("ell-scan " + golden_path("ell_config.json") + " --threads 3");
    EXPECT_EQ(e1.out, e2.out);
}

TEST(Cli, EllScanExceptionalGolden) {
    auto r = cli("ell-scan " + golden_path("ell_config.json"));
    ASSERT_EQ(r.code, 0) << r.out;
    EXPECT_EQ(r.out, golden("ell_gauss_6.csv"));
    EXPECT_NE(r.out.find("# exceptional: witness (1, id, "), std::string::npos);
    EXPECT_EQ(data_rows(r.out), 6);
}

TEST(Cli, EllScanErrors) {
    const std::string dir = ::testing::TempDir();
    {
        std::ofstream f(dir + "/torsion.json");
        f << R"({"k":"x","l":"x","a":"-1","b":"0","P":["0","0"],"n_max":3})";
    }
    auto t = cli("ell-scan " + dir + "/torsion.json");
    EXPECT_EQ(t.code, 2);
    EXPECT_NE(t.out.find("Torsion"), std::string::npos);
    {
        std::ofstream f(dir + "/budget.json");
        f << R"({"k":"x","l":"x","a":"0","b":"-2","P":["3","5"],"n_max":30,"coordinate_bits":200})";
    }
    auto b = cli("ell-scan " + dir + "/budget.json");
    EXPECT_EQ(b.code, 0);
    EXPECT_NE(b.out.find("truncated at n = "), std::string::npos);
    EXPECT_NE(b.out.find("BudgetExceeded"), std::string::npos);
    {
        std::ofstream f(dir + "/offcurve.json");
        f << R"({"k":"x","l":"x","a":"0","b":"-2","P":["3","4"]})";
    }
    EXPECT_EQ(cli("ell-scan " + dir + "/offcurve.json").code, 2);
}

TEST(Cli, UsageErrors) {
    EXPECT_EQ(cli("").code, 2);
    EXPECT_EQ(cli("gm-scan --poly x^2+1").code, 2);
    EXPECT_EQ(cli(kGauss + " --format xml").code, 2);
    EXPECT_EQ(cli("--help").code, 0);
}
