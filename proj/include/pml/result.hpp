#ifndef PML_RESULT_HPP
#define PML_RESULT_HPP

#include <cassert>
#include <optional>
#include <utility>
#include <vector>

namespace pml {

/// Value-or-diagnostics carrier used by every fallible operation.
template <typename T, typename E>
class Result {
public:
    Result(T value) : value_(std::move(value)) {}
    Result(E error) { errors_.push_back(std::move(error)); }
    Result(std::vector<E> errors) : errors_(std::move(errors)) {
        assert(!errors_.empty());
    }

    bool ok() const { return value_.has_value(); }
    explicit operator bool() const { return ok(); }

    const T& value() const {
        assert(ok());
        return *value_;
    }
    T& value() {
        assert(ok());
        return *value_;
    }
    T take() {
        assert(ok());
        return std::move(*value_);
    }

    const std::vector<E>& errors() const { return errors_; }

private:
    std::optional<T> value_;
    std::vector<E> errors_;
};

} // namespace pml

#endif
