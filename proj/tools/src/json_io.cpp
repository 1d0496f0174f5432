#include "capture/cli/json_io.hpp"

namespace capture {

void to_json(nlohmann::json& j, const ContainmentCertificate& c) {
    j = nlohmann::json{{"method", ContainmentCertificate::kMethod},
                       {"checkpoints", c.checkpoints},
                       {"intervals", c.intervals},
                       {"derivative_bound", c.derivative_bound},
                       {"safety", c.safety},
                       {"passed", c.passed},
                       {"failure", c.failure}};
    j["failed_at"] = c.failed_at ? nlohmann::json(*c.failed_at) : nlohmann::json(nullptr);
}

void from_json(const nlohmann::json& j, ContainmentCertificate& c) {
    j.at("checkpoints").get_to(c.checkpoints);
    j.at("intervals").get_to(c.intervals);
    j.at("derivative_bound").get_to(c.derivative_bound);
    j.at("safety").get_to(c.safety);
    j.at("passed").get_to(c.passed);
    j.at("failure").get_to(c.failure);
    if (j.at("failed_at").is_null())
        c.failed_at.reset();
    else
        c.failed_at = j.at("failed_at").get<double>();
}

}  // namespace capture
