#pragma once

#include <cstddef>
#include <vector>

namespace posetrss {

// Dense row-major square matrix of doubles.
class SquareMatrix
{
  public:
    SquareMatrix() = default;
    explicit SquareMatrix(std::size_t n, double fill = 0.0)
        : n_(n), data_(n * n, fill)
    {
    }

    static SquareMatrix identity(std::size_t n)
    {
        SquareMatrix out(n);
        for (std::size_t i = 0; i < n; ++i)
            out(i, i) = 1.0;
        return out;
    }

    std::size_t size() const { return n_; }
    double& operator()(std::size_t i, std::size_t j) { return data_[i * n_ + j]; }
    double operator()(std::size_t i, std::size_t j) const
    {
        return data_[i * n_ + j];
    }

    friend bool operator==(SquareMatrix const&, SquareMatrix const&) = default;

  private:
    std::size_t n_ = 0;
    std::vector<double> data_;
};

}  // namespace posetrss
