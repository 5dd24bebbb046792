#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "spheregh/distortion.hpp"

namespace sgh {

enum ExitCode { kExitOk = 0, kExitCertificationFailed = 2, kExitInputError = 3 };

struct ConstructionInfo {
    std::string id;
    std::string description;
    std::string method;  // "adaptive" (block) or "net" (map)
    double target = 0.0;
    bool strict = false;  // the target must be beaten, not just met
    double default_mesh = 0.0;
};

// Recognized ids: phi21, phi31, phi32, phi_m1_m:m=<k>, psi:<m>-<n>, heptagonE, hexagonD.
ConstructionInfo construction_info(const std::string& id);
std::vector<ConstructionInfo> construction_catalog();

struct CertifyRun {
    ConstructionInfo info;
    DistortionCertificate certificate;
    double target = 0.0;  // in the certificate's flavor
    bool pass = false;
};

// mesh <= 0 selects the default; flavor overrides the construction's native metric.
CertifyRun certify_construction(const std::string& id, double mesh = 0.0, std::optional<Flavor> flavor = {},
                                std::uint64_t seed = 1, double max_seconds = 600.0);

// Entry point of the command line tool. Environment variables SPHEREGH_<FLAG> mirror the flags.
int run_cli(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace sgh
