// Copyright 2026 The wittnp Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "wittnp/arnold/checks.hpp"

namespace wittnp::arnold {

/// Check groups accepted by verify_report.
inline const std::vector<std::string> kReportGroups = {"hyp1", "hyp2", "hyp3", "sum-nodes", "mult-raises", "prime-p"};

struct ReportConfig {
    PrecisionCtx ctx;
    unsigned depth = 2;
    unsigned samples = 25;
    std::uint64_t seed = 7;
    CheckConfig check;
    /// One of kReportGroups, or "all".
    std::string which = "all";
    /// Worker threads; 0 picks the hardware concurrency.
    unsigned threads = 0;
};

struct ReportEntry {
    std::string id;
    std::string group;
    std::string statement;
    VerdictKind expected = VerdictKind::Verified;
    Verdict verdict;
    double duration_ms = 0;

    bool pass() const noexcept { return verdict.kind == expected; }
};

struct Report {
    ReportConfig config;
    std::vector<ReportEntry> entries;
    std::vector<std::string> notes;

    std::size_t passed() const;
    std::size_t unknown() const;
    /// Entries whose verdict is certified but not the expected one.
    std::size_t failed() const;
    bool all_pass() const { return passed() == entries.size(); }
    /// 0 all pass, 1 a certified failure, 2 otherwise.
    int exit_code() const;

    /// Schema "wittnp.report/1"; durations only with `timings`.
    nlohmann::json to_json(bool timings = false) const;
    std::string summary_text() const;
};

/// Runs the checks for levels 1..depth.  The entry list and every verdict are
/// determined by the configuration and seed; entries run on worker threads.
Report verify_report(const ReportConfig& cfg);

}  // namespace wittnp::arnold
