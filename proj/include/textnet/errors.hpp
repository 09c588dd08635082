#pragma once

#include <stdexcept>
#include <string>

namespace textnet {

// Bad bytes, empty documents, unreadable inputs.
class ingestion_error : public std::runtime_error {
public:
    explicit ingestion_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Configuration or precondition failures detected before compute starts.
class validation_error : public std::runtime_error {
public:
    explicit validation_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Internal contract broken; indicates a bug, not bad user input.
class invariant_error : public std::logic_error {
public:
    explicit invariant_error(const std::string& msg) : std::logic_error(msg) {}
};

// Size/memory caps exceeded; message carries the offending counts.
class resource_error : public std::runtime_error {
public:
    explicit resource_error(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace textnet
