#pragma once

#include <cstdint>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace delayed_hits {

/// Item identifier. 0 is reserved for "no item" (an idle slot, or no eviction).
using Item = std::uint32_t;
/// Timestep index; requests are numbered from 1.
using Time = std::int64_t;
/// Latency in whole timesteps.
using Latency = std::int64_t;

inline constexpr Item kNoItem = 0;

enum class Mode {
    Standard,
    /// Every nonzero request is sent to the backing store, hit or not.
    Antimonotone,
};

const char* to_string(Mode mode);
Mode parse_mode(const std::string& text);

struct ModelParams {
    Item n = 1;
    Item k = 1;
    Time Z = 1;
    Mode mode = Mode::Standard;

    /// Throws std::invalid_argument unless n, k, Z are all positive.
    void validate() const;
};

/// Thrown when a caller breaks a documented precondition.
class ContractViolation : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// An attempted eviction of an item that is not resident, or an eviction
/// scheduled at a time where no caching decision takes place.
class InfeasibleEviction : public std::runtime_error {
public:
    InfeasibleEviction(Time t, Item item, const std::string& why);

    Time time() const { return time_; }
    Item item() const { return item_; }

private:
    Time time_;
    Item item_;
};

class LengthMismatch : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class UnsupportedParameter : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class RequestSequence {
public:
    RequestSequence() = default;
    RequestSequence(std::vector<Item> items) : items_(std::move(items)) {}
    RequestSequence(std::initializer_list<Item> items) : items_(items) {}

    std::size_t size() const { return items_.size(); }
    bool empty() const { return items_.empty(); }

    /// 1-based access matching the timestep numbering.
    Item at(Time t) const { return items_.at(static_cast<std::size_t>(t - 1)); }

    std::span<const Item> items() const { return items_; }
    Item max_item() const;

    void append(Item item) { items_.push_back(item); }
    void append(const RequestSequence& other);

    /// Throws std::invalid_argument naming the first entry above n.
    void validate(Item n) const;

    friend bool operator==(const RequestSequence&, const RequestSequence&) = default;

private:
    std::vector<Item> items_;
};

/// Bit vector over a trace; 1 marks a full cache hit.
class HitSequence {
public:
    HitSequence() = default;
    explicit HitSequence(std::vector<std::uint8_t> bits);
    HitSequence(std::initializer_list<int> bits);

    static HitSequence all_ones(std::size_t length);
    static HitSequence all_zeros(std::size_t length);

    std::size_t size() const { return bits_.size(); }
    bool at(Time t) const { return bits_.at(static_cast<std::size_t>(t - 1)) != 0; }
    void set(Time t, bool value) { bits_.at(static_cast<std::size_t>(t - 1)) = value ? 1 : 0; }
    std::span<const std::uint8_t> bits() const { return bits_; }

    /// Forces the bits at idle slots of `sequence` to 1.
    HitSequence normalized(const RequestSequence& sequence) const;

    std::string to_string() const;

    friend bool operator==(const HitSequence&, const HitSequence&) = default;
    friend auto operator<=>(const HitSequence&, const HitSequence&) = default;

private:
    std::vector<std::uint8_t> bits_;
};

/// j_t per timestep; 0 means "no eviction" (declined, or no decision at t).
class EvictionSequence {
public:
    EvictionSequence() = default;
    explicit EvictionSequence(std::vector<Item> choices) : choices_(std::move(choices)) {}
    EvictionSequence(std::initializer_list<Item> choices) : choices_(choices) {}

    static EvictionSequence none(std::size_t length) { return EvictionSequence(std::vector<Item>(length, kNoItem)); }

    std::size_t size() const { return choices_.size(); }
    Item at(Time t) const { return choices_.at(static_cast<std::size_t>(t - 1)); }
    void set(Time t, Item item) { choices_.at(static_cast<std::size_t>(t - 1)) = item; }
    std::span<const Item> choices() const { return choices_; }

    friend bool operator==(const EvictionSequence&, const EvictionSequence&) = default;

private:
    std::vector<Item> choices_;
};

/// Sorted set of resident items. Caches here are tiny, so a flat vector wins.
class CacheState {
public:
    CacheState() = default;
    CacheState(std::initializer_list<Item> items);
    explicit CacheState(std::vector<Item> items);

    /// {1, ..., k}
    static CacheState initial(Item k);

    bool contains(Item item) const;
    std::size_t size() const { return items_.size(); }
    bool empty() const { return items_.empty(); }
    std::span<const Item> items() const { return items_; }

    void insert(Item item);
    void erase(Item item);

    std::string to_string() const;

    friend bool operator==(const CacheState&, const CacheState&) = default;
    friend auto operator<=>(const CacheState&, const CacheState&) = default;

private:
    std::vector<Item> items_;
};

}  // namespace delayed_hits
