// Copyright 2026 The AWCD Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdio>
#include <filesystem>

#include "awcd/awcd.hpp"
#include "support/test_support.hpp"

namespace {

using namespace awcd;
namespace fs = std::filesystem;

struct Outcome {
    int code = -1;
    std::string out;
};

class Cli : public ::testing::Test {
protected:
    void SetUp() override {
        dir_ = fs::temp_directory_path() /
               ("awcd_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
        fs::remove_all(dir_);
        fs::create_directories(dir_);
    }
    void TearDown() override { fs::remove_all(dir_); }

    Outcome run(const std::string& args) const {
        const std::string cmd = std::string(AWCD_CLI_PATH) + " " + args + " 2>" + (dir_ / "stderr.txt").string();
        Outcome r;
        FILE* pipe = popen(cmd.c_str(), "r");
        if (!pipe) return r;
        char buf[4096];
        std::size_t n;
        while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, n);
        const int status = pclose(pipe);
        r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
        return r;
    }
    std::string err() const { return cloud::read_file(dir_ / "stderr.txt"); }
    std::string path(const std::string& name) const { return (dir_ / name).string(); }

    fs::path dir_;
};

TEST_F(Cli, RorCollinearFixtureKeepsMiddle) {
    cloud::write_file_atomic(path("line.xyz"), "0 0 0\n1 0 0\n2 0 0\n");
    const Outcome r = run("denoise -i " + path("line.xyz") + " -o " + path("out.xyz") +
                      " --method ror --radius 1.5 --min-count 3");
    ASSERT_EQ(r.code, 0) << err();
    EXPECT_EQ(cloud::read_file(path("out.xyz")), "1 0 0\n");
    EXPECT_NE(r.out.find("kept=1 removed=2"), std::string::npos) << r.out;
}

TEST_F(Cli, AwcdZeroMarkRoundTripsInput) {
    awcd::testing::TestRng rng(701);
    const cloud::PointCloud c = rng.uniform_cloud(300, 2.0);
    cloud::save_cloud(c, path("in.ply"));
    const Outcome r = run("denoise -i " + path("in.ply") + " -o " + path("out.ply") + " --rho0 0 -k 10");
    ASSERT_EQ(r.code, 0) << err();
    EXPECT_EQ(cloud::load_cloud(path("out.ply")), c);
    EXPECT_NE(r.out.find("selection=manual"), std::string::npos) << r.out;
}

TEST_F(Cli, LabelsAndClassifiedOutput) {
    const cloud::PointCloud c =
        bench::inject_noise(bench::sphere_surface(600, 1.0, 2), {2.0, bench::kDefaultExpansion, 3});
    cloud::save_cloud(c, path("in.xyz"));
    cloud::save_labels(*c.labels(), path("labels.txt"));
    const Outcome r = run("denoise -i " + path("in.xyz") + " -o " + path("out.xyz") + " --labels " +
                      path("labels.txt") + " --classified " + path("class.ply"));
    ASSERT_EQ(r.code, 0) << err();
    EXPECT_NE(r.out.find("tpr="), std::string::npos);
    EXPECT_NE(r.out.find("selection="), std::string::npos);
    const cloud::PointCloud classified = cloud::load_cloud(path("class.ply"));
    EXPECT_GT(classified.size(), 0u);
}

TEST_F(Cli, MissingInputExitsTwoWithPath) {
    const Outcome r = run("denoise -i " + path("absent.xyz") + " -o " + path("out.xyz"));
    EXPECT_EQ(r.code, 2);
    EXPECT_NE(err().find("absent.xyz"), std::string::npos);
}

TEST_F(Cli, EmptyInputExitsTwo) {
    cloud::write_file_atomic(path("empty.xyz"), "# nothing\n");
    EXPECT_EQ(run("curvature -i " + path("empty.xyz")).code, 2);
}

TEST_F(Cli, ParameterErrorsExitThree) {
    cloud::write_file_atomic(path("line.xyz"), "0 0 0\n1 0 0\n2 0 0\n");
    EXPECT_EQ(run("denoise -i " + path("line.xyz") + " -o " + path("o.xyz") + " --method ror").code, 3);
    EXPECT_EQ(run("denoise -i " + path("line.xyz") + " -o " + path("o.xyz") + " --method pcl").code, 3);
    EXPECT_EQ(run("denoise -i " + path("line.xyz") + " -o " + path("o.xyz") + " -k 30").code, 3);
    EXPECT_EQ(run("denoise --bogus").code, 3);
    EXPECT_EQ(run("bench --methods ror").code, 3);
    EXPECT_FALSE(fs::exists(path("o.xyz")));
}

TEST_F(Cli, ConstantFieldHistExitsFour) {
    awcd::testing::TestRng rng(703);
    cloud::save_cloud(rng.uniform_cloud(50, 1.0), path("c.xyz"));
    const Outcome r = run("hist -i " + path("c.xyz") + " -k 1");
    EXPECT_EQ(r.code, 4);
    EXPECT_NE(err().find("--rho0"), std::string::npos);
}

TEST_F(Cli, CurvatureOfLatticeInterior) {
    std::string xyz;
    for (int x = 0; x < 3; ++x)
        for (int y = 0; y < 3; ++y)
            for (int z = 0; z < 3; ++z) xyz += std::to_string(x) + " " + std::to_string(y) + " " + std::to_string(z) + "\n";
    cloud::write_file_atomic(path("grid.xyz"), xyz);
    const Outcome r = run("curvature -i " + path("grid.xyz") + " -k 6");
    ASSERT_EQ(r.code, 0) << err();
    EXPECT_EQ(r.out.substr(0, r.out.find('\n')), "index,rho,degenerate");
    const std::string centre = r.out.substr(r.out.find("\n13,") + 4);
    EXPECT_NEAR(std::stod(centre), 7.875 * 3.0, 1e-9);
}

TEST_F(Cli, HistWritesCsvAndMark) {
    awcd::testing::TestRng rng(705);
    cloud::save_cloud(rng.uniform_cloud(400, 1.0), path("c.xyz"));
    const Outcome r = run("hist -i " + path("c.xyz") + " -k 12 -o " + path("h.csv") + " --mark " + path("m.json"));
    ASSERT_EQ(r.code, 0) << err();
    EXPECT_EQ(cloud::read_file(path("h.csv")).rfind("bin_lo,bin_hi,count\n", 0), 0u);
    const auto mark = nlohmann::json::parse(cloud::read_file(path("m.json")));
    EXPECT_TRUE(mark.contains("value"));
    EXPECT_TRUE(mark["method"] == "trough" || mark["method"] == "otsu-fallback");
}

TEST_F(Cli, BenchDeterministicAcrossThreads) {
    const std::string args = "bench --sphere 800 --snr 1,4 --seeds 1,2 --methods ror,sor,awcd --radius 0.2 -k 20 --no-timing";
    const Outcome a = run(args + " --threads 1");
    const Outcome b = run(args + " --threads 4");
    ASSERT_EQ(a.code, 0) << err();
    EXPECT_EQ(a.out, b.out);
    EXPECT_EQ(std::count(a.out.begin(), a.out.end(), '\n'), 13);
    const Outcome j = run(args + " --format json -o " + path("r.json"));
    ASSERT_EQ(j.code, 0) << err();
    EXPECT_EQ(nlohmann::json::parse(cloud::read_file(path("r.json")))["rows"].size(), 12u);
}

TEST_F(Cli, BenchFailedCellExitsOne) {
    const Outcome r = run("bench --sphere 100 --sizes 500 --methods sor --no-timing");
    EXPECT_EQ(r.code, 1);
}

} // namespace
