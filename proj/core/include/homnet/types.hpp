#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <tuple>

namespace homnet {

using NodeId = std::string;

enum class Gender : std::uint8_t { Female, Male, Unknown };
enum class Race : std::uint8_t { White, Asian, Black, Unknown };
enum class PropertyType : std::uint8_t { Full, Shared };

const char* to_string(Gender g);
const char* to_string(Race r);
const char* to_string(PropertyType p);

/// Per-node demographic annotation with per-attribute confidences in [0,1].
/// Unknown category values are treated as missing throughout.
struct AttributeSet {
    Gender gender = Gender::Unknown;
    double gender_conf = 0.0;
    Race race = Race::Unknown;
    double race_conf = 0.0;
    std::optional<int> age_years;
    double age_conf = 0.0;

    bool operator==(const AttributeSet&) const = default;
};

/// Host-side wealth proxies (matched-pair covariates).
struct HostProfile {
    int num_properties = 1;
    double weekly_price = 0.0;

    bool operator==(const HostProfile&) const = default;
};

/// Identifies one analysed network: (city, property type).
struct SliceKey {
    std::string city;
    PropertyType property_type = PropertyType::Full;

    auto operator<=>(const SliceKey&) const = default;
};

std::string to_string(const SliceKey& key);

enum class Errc {
    UnknownEndpoint,
    DuplicateNodeId,
    NonPositiveWeight,
    UnknownNode,
    InsufficientData,
    ParseError,
    ReferentialError,
    ConflictingNodeRow,
    RangeError,
    NotRewirable,
    DegenerateInput,
    EmptyView,
    InsufficientEnsemble,
    EmptySourceGroup,
    InsufficientPriceData,
    NoMatchablePairs,
    NoKnownRaceStays,
    DegenerateDifferences,
    InvalidSpec,
    IoError,
};

const char* to_string(Errc code);

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

    Errc code() const noexcept { return code_; }

private:
    Errc code_;
};

}  // namespace homnet
