#include "delayed_hits/types.hpp"

#include <algorithm>
#include <sstream>

namespace delayed_hits {

const char* to_string(Mode mode)
{
    return mode == Mode::Standard ? "standard" : "antimonotone";
}

Mode parse_mode(const std::string& text)
{
    if (text == "standard") {
        return Mode::Standard;
    }
    if (text == "antimonotone") {
        return Mode::Antimonotone;
    }
    throw std::invalid_argument("unknown model '" + text + "' (expected standard|antimonotone)");
}

void ModelParams::validate() const
{
    if (n < 1 || k < 1 || Z < 1) {
        throw std::invalid_argument("model parameters must satisfy n >= 1, k >= 1, Z >= 1");
    }
}

InfeasibleEviction::InfeasibleEviction(Time t, Item item, const std::string& why)
    : std::runtime_error("infeasible eviction of item " + std::to_string(item) + " at t=" + std::to_string(t) + ": " + why)
    , time_(t)
    , item_(item)
{
}

Item RequestSequence::max_item() const
{
    Item best = kNoItem;
    for (Item item : items_) {
        best = std::max(best, item);
    }
    return best;
}

void RequestSequence::append(const RequestSequence& other)
{
    items_.insert(items_.end(), other.items_.begin(), other.items_.end());
}

void RequestSequence::validate(Item n) const
{
    for (std::size_t i = 0; i < items_.size(); ++i) {
        if (items_[i] > n) {
            throw std::invalid_argument("request at t=" + std::to_string(i + 1) + " is item " + std::to_string(items_[i]) +
                                        ", above n=" + std::to_string(n));
        }
    }
}

HitSequence::HitSequence(std::vector<std::uint8_t> bits) : bits_(std::move(bits))
{
    for (auto& bit : bits_) {
        bit = bit != 0 ? 1 : 0;
    }
}

HitSequence::HitSequence(std::initializer_list<int> bits)
{
    bits_.reserve(bits.size());
    for (int bit : bits) {
        bits_.push_back(bit != 0 ? 1 : 0);
    }
}

HitSequence HitSequence::all_ones(std::size_t length)
{
    return HitSequence(std::vector<std::uint8_t>(length, 1));
}

HitSequence HitSequence::all_zeros(std::size_t length)
{
    return HitSequence(std::vector<std::uint8_t>(length, 0));
}

HitSequence HitSequence::normalized(const RequestSequence& sequence) const
{
    if (sequence.size() != size()) {
        throw LengthMismatch("hit sequence length " + std::to_string(size()) + " does not match request sequence length " +
                             std::to_string(sequence.size()));
    }
    HitSequence out = *this;
    for (std::size_t i = 0; i < bits_.size(); ++i) {
        if (sequence.items()[i] == kNoItem) {
            out.bits_[i] = 1;
        }
    }
    return out;
}

std::string HitSequence::to_string() const
{
    std::string out;
    out.reserve(bits_.size());
    for (auto bit : bits_) {
        out.push_back(bit ? '1' : '0');
    }
    return out;
}

CacheState::CacheState(std::initializer_list<Item> items) : CacheState(std::vector<Item>(items)) {}

CacheState::CacheState(std::vector<Item> items) : items_(std::move(items))
{
    std::sort(items_.begin(), items_.end());
    items_.erase(std::unique(items_.begin(), items_.end()), items_.end());
    if (!items_.empty() && items_.front() == kNoItem) {
        throw ContractViolation("item 0 can never be resident");
    }
}

CacheState CacheState::initial(Item k)
{
    std::vector<Item> items(k);
    for (Item i = 0; i < k; ++i) {
        items[i] = i + 1;
    }
    return CacheState(std::move(items));
}

bool CacheState::contains(Item item) const
{
    return std::binary_search(items_.begin(), items_.end(), item);
}

void CacheState::insert(Item item)
{
    if (item == kNoItem) {
        throw ContractViolation("item 0 can never be resident");
    }
    auto it = std::lower_bound(items_.begin(), items_.end(), item);
    if (it == items_.end() || *it != item) {
        items_.insert(it, item);
    }
}

void CacheState::erase(Item item)
{
    auto it = std::lower_bound(items_.begin(), items_.end(), item);
    if (it != items_.end() && *it == item) {
        items_.erase(it);
    }
}

std::string CacheState::to_string() const
{
    std::ostringstream os;
    os << '{';
    for (std::size_t i = 0; i < items_.size(); ++i) {
        os << (i ? "," : "") << items_[i];
    }
    os << '}';
    return os.str();
}

}  // namespace delayed_hits
