#pragma once

#include "json.hpp"

#include <string>
#include <utility>

namespace mtcheck {

using Json = nlohmann::json;

enum class Status { pass, fail, skip, undecided };

const char* status_name(Status s);

// Outcome of one named check. Failures and undecided outcomes carry a witness
// object with enough exact data to replay the violation; skips carry a reason.
struct CheckVerdict {
    std::string name;
    Status status = Status::skip;
    Json witness;  // null for passes
    double ms = 0.0;

    static CheckVerdict passed(std::string name) {
        return {std::move(name), Status::pass, Json(), 0.0};
    }
    static CheckVerdict failed(std::string name, Json witness) {
        return {std::move(name), Status::fail, std::move(witness), 0.0};
    }
    static CheckVerdict skipped(std::string name, std::string reason) {
        return {std::move(name), Status::skip, Json{{"reason", std::move(reason)}}, 0.0};
    }
    static CheckVerdict undecided(std::string name, Json witness) {
        return {std::move(name), Status::undecided, std::move(witness), 0.0};
    }
};

}  // namespace mtcheck
