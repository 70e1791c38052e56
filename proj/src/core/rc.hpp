// Copyright 2026 The exmachina Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <atomic>
#include <cstddef>
#include <cstdint>
#include <type_traits>
#include <utility>
#include <vector>

namespace exm {

// Base class for immutable, intrusively counted nodes. The last release of a
// node defers the destruction of children that die with it onto a work list,
// so freeing a long list or continuation never recurses on the native stack.
class RcNode {
 public:
  RcNode() = default;
  RcNode(const RcNode&) = delete;
  RcNode& operator=(const RcNode&) = delete;
  virtual ~RcNode() = default;

  void retain() const noexcept { refs_.fetch_add(1, std::memory_order_relaxed); }

  void release() const noexcept {
    if (refs_.fetch_sub(1, std::memory_order_acq_rel) != 1) return;
    thread_local std::vector<const RcNode*>* pending = nullptr;
    if (pending != nullptr) {
      pending->push_back(this);
      return;
    }
    std::vector<const RcNode*> work{this};
    pending = &work;
    while (!work.empty()) {
      const RcNode* node = work.back();
      work.pop_back();
      delete node;
    }
    pending = nullptr;
  }

 private:
  mutable std::atomic<std::uint32_t> refs_{0};
};

template <class T>
class Rc {
 public:
  Rc() noexcept = default;
  Rc(std::nullptr_t) noexcept {}
  explicit Rc(const T* p) noexcept : p_(p) {
    if (p_ != nullptr) p_->retain();
  }
  Rc(const Rc& o) noexcept : p_(o.p_) {
    if (p_ != nullptr) p_->retain();
  }
  Rc(Rc&& o) noexcept : p_(std::exchange(o.p_, nullptr)) {}
  template <class U, class = std::enable_if_t<std::is_convertible_v<const U*, const T*>>>
  Rc(const Rc<U>& o) noexcept : p_(o.get()) {
    if (p_ != nullptr) p_->retain();
  }
  ~Rc() {
    if (p_ != nullptr) p_->release();
  }

  Rc& operator=(const Rc& o) noexcept {
    Rc tmp(o);
    std::swap(p_, tmp.p_);
    return *this;
  }
  Rc& operator=(Rc&& o) noexcept {
    Rc tmp(std::move(o));
    std::swap(p_, tmp.p_);
    return *this;
  }

  const T* get() const noexcept { return p_; }
  const T* operator->() const noexcept { return p_; }
  const T& operator*() const noexcept { return *p_; }
  explicit operator bool() const noexcept { return p_ != nullptr; }
  friend bool operator==(const Rc& a, const Rc& b) noexcept { return a.p_ == b.p_; }
  friend bool operator!=(const Rc& a, const Rc& b) noexcept { return a.p_ != b.p_; }

 private:
  const T* p_ = nullptr;
};

template <class T, class... Args>
Rc<T> make_rc(Args&&... args) {
  return Rc<T>(new T(std::forward<Args>(args)...));
}

}  // namespace exm
