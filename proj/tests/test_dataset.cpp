#include <doctest.h>

#include <cmath>
#include <sstream>

#include "banova/dataset.hpp"
#include "banova/error.hpp"
#include "test_support.hpp"

using namespace banova;

namespace {

BalancedOneWayData parse(const std::string& text) {
    std::istringstream in(text);
    return load_csv(in);
}

ErrorKind kind_of(const std::string& text) {
    try {
        parse(text);
    } catch (const Error& e) {
        return e.kind();
    }
    FAIL("expected an error");
    return ErrorKind::EmptyInput;
}

} // namespace

TEST_CASE("load_csv parses a small balanced file") {
    const auto data = parse("group,value\na,0\na,2\nb,4\nb,6");
    CHECK(data.n_groups() == 2);
    CHECK(data.n_reps() == 2);
    CHECK(data.group_labels == std::vector<std::string>{"a", "b"});
    CHECK(data.values == std::vector<double>{0, 2, 4, 6});
}

TEST_CASE("load_csv keeps first-appearance group order with interleaved rows") {
    const auto data = parse("group,value\nz,1\na,2\nz,3\na,4");
    CHECK(data.group_labels == std::vector<std::string>{"z", "a"});
    CHECK(data.values == std::vector<double>{1, 3, 2, 4});
}

TEST_CASE("load_csv error paths") {
    CHECK(kind_of("group,value\na,1\nb,2\nb,3") == ErrorKind::UnbalancedDesign);
    CHECK(kind_of("") == ErrorKind::EmptyInput);
    CHECK(kind_of("group,value\n") == ErrorKind::EmptyInput);
    CHECK(kind_of("group,value\na,1\na,2") == ErrorKind::TooFewGroups);
    CHECK(kind_of("group,value\na,1\nb,2") == ErrorKind::TooFewReplicates);
    CHECK(kind_of("group,value\na,1\na,x\nb,2\nb,3") == ErrorKind::NonNumericValue);
    CHECK(kind_of("group,value\na,inf\na,1\nb,2\nb,3") == ErrorKind::NonNumericValue);
    CHECK(kind_of("value,group\na,1") == ErrorKind::MalformedInput);
    CHECK(kind_of("group,value\na,1,9\nb,2") == ErrorKind::MalformedInput);
}

TEST_CASE("load_csv accepts CRLF and blank lines") {
    const auto data = parse("group,value\r\na,1\r\n\r\nb,2\r\na,3\r\nb,4\r\n");
    CHECK(data.n_groups() == 2);
    CHECK(data.n_reps() == 2);
}

TEST_CASE("rail file loads as 6 groups of 3") {
    const auto data = load_csv_file(testutil::rail_csv_path());
    CHECK(data.n_groups() == 6);
    CHECK(data.n_reps() == 3);
    CHECK(data.n_total() == 18);
}

TEST_CASE("summarize computes group and grand means") {
    const auto s = summarize(testutil::toy_data());
    CHECK(s.group_means == std::vector<double>{1.0, 5.0});
    CHECK(s.grand_mean == 3.0);

    const auto s2 = summarize(testutil::make_data({{1, 1}, {1, 3}}));
    CHECK(s2.group_means == std::vector<double>{1.0, 2.0});
    CHECK(s2.grand_mean == 1.5);

    const auto s3 = summarize(testutil::make_data({{7, 7, 7}, {7, 7, 7}}));
    CHECK(s3.group_means == std::vector<double>{7.0, 7.0});
    CHECK(s3.grand_mean == 7.0);
}

TEST_CASE("grand mean equals the mean of group means") {
    testutil::TestRand rnd(9);
    for (int t = 0; t < 200; ++t) {
        const int n_i = rnd.uniform_int(2, 8);
        const int n_j = rnd.uniform_int(2, 9);
        std::vector<std::vector<double>> rows(n_i);
        for (auto& row : rows)
            for (int j = 0; j < n_j; ++j)
                row.push_back(rnd.uniform(-100.0, 100.0));
        const auto s = summarize(testutil::make_data(rows));
        double mean_of_means = 0.0;
        for (const double m : s.group_means)
            mean_of_means += m;
        mean_of_means /= n_i;
        CHECK(std::fabs(s.grand_mean - mean_of_means) <=
              1e-12 * std::max(1.0, std::fabs(s.grand_mean)));
    }
}

TEST_CASE("summary is invariant to permuting replicates within a group") {
    const auto a = summarize(testutil::make_data({{3, 1, 2}, {9, 7, 8}}));
    const auto b = summarize(testutil::make_data({{1, 2, 3}, {8, 9, 7}}));
    CHECK(a.group_means == b.group_means);
    CHECK(a.grand_mean == b.grand_mean);
}
