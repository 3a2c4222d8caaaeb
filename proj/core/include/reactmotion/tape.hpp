#pragma once

#include <cstdint>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "reactmotion/param_store.hpp"
#include "reactmotion/tensor.hpp"

namespace reactmotion::diff {

/// The fixed primitive set. Everything the networks and losses need is
/// composed from these; there are no fused or derived node kinds.
enum class OpKind : std::uint8_t {
  kInput,
  kConstant,
  kParam,
  kMatMul,
  kAdd,
  kMul,       // elementwise
  kConcat,    // axis 0 stacks rows, axis 1 stacks columns
  kSlice,
  kSigmoid,
  kTanh,
  kSoftmax,   // per column
  kLog,
  kExp,
  kSquare,
  kAbs,
  kMaxScalar,  // max(x, scalar) elementwise
  kSum,
  kMean,
};

const char* op_name(OpKind op);

struct ShapeError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct GraphError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct NumericError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

class Tape;

/// Handle to a node on a tape. Cheap to copy; valid as long as the tape lives.
struct Var {
  Tape* tape = nullptr;
  int id = -1;
  bool valid() const { return tape != nullptr && id >= 0; }
  const Tensor& value() const;
  const Tensor& grad() const;
};

struct ComputeNode {
  OpKind op = OpKind::kConstant;
  Tensor value;
  Tensor grad;  // same shape as value once backward has run
  std::vector<int> inputs;
  int axis = 0;
  int offset = 0;
  int extent = 0;
  double scalar = 0.0;
  int param_index = -1;
  std::string label;  // inputs and params only
};

/// Computation recorded in construction order, which is a topological order
/// by definition. forward() re-evaluates every node from the current leaf
/// bindings and parameter values; backward() runs the reverse sweep from a
/// scalar node. Single-threaded per instance; distinct tapes over distinct
/// stores may run concurrently.
class Tape {
 public:
  Tape() = default;
  explicit Tape(const ParamStore* params) : store_(params) {}

  // Leaves.
  Var input(std::string name, Tensor value);
  Var constant(Tensor value);
  Var constant(double v) { return constant(Tensor::scalar(v)); }
  Var param(std::string_view name);

  // Primitives.
  Var matmul(Var a, Var b);
  Var add(Var a, Var b);
  Var mul(Var a, Var b);
  Var concat(std::span<const Var> parts, int axis);
  Var concat(std::initializer_list<Var> parts, int axis);
  Var slice(Var a, int axis, int offset, int extent);
  Var sigmoid(Var a);
  Var tanh(Var a);
  Var softmax(Var a);
  Var log(Var a);
  Var exp(Var a);
  Var square(Var a);
  Var abs(Var a);
  Var max_scalar(Var a, double floor);
  Var sum(Var a);
  Var mean(Var a);

  // Composites assembled from the primitives above.
  Var scale(Var a, double s);
  Var neg(Var a) { return scale(a, -1.0); }
  Var sub(Var a, Var b) { return add(a, neg(b)); }
  Var add_scalar(Var a, double c);
  Var one_minus(Var a) { return add_scalar(neg(a), 1.0); }
  /// log(max(x, 1e-12)); the floor keeps adversarial losses away from -inf.
  Var log_floor(Var a) { return log(max_scalar(a, kLogFloor)); }
  /// sqrt(max(x, 1e-12)) as exp(0.5 * log(.)), for x >= 0.
  Var sqrt_floor(Var a) { return exp(scale(log(max_scalar(a, kLogFloor)), 0.5)); }

  void set_input(std::string_view name, Tensor value);
  /// Recomputes every node in order from current inputs and parameters.
  void forward();
  /// Reverse sweep from a 1x1 output node. Zeroes all gradients first.
  void backward(Var output);

  const Tensor& value(Var v) const { return node(v.id).value; }
  const Tensor& grad(Var v) const;
  /// Gradient per parameter of the bound store; zeros for parameters the
  /// graph never touched. Requires a prior backward().
  Gradients param_gradients() const;

  int size() const { return static_cast<int>(nodes_.size()); }
  const ComputeNode& node(int id) const { return nodes_[static_cast<std::size_t>(id)]; }
  const ParamStore* store() const { return store_; }

  static constexpr double kLogFloor = 1e-12;

 private:
  Var push(ComputeNode n);
  void eval_node(int id);
  [[noreturn]] void fail_shape(const ComputeNode& n, int id, const std::string& detail) const;

  std::vector<ComputeNode> nodes_;
  std::unordered_map<std::string, int> inputs_by_name_;
  const ParamStore* store_ = nullptr;
  bool has_gradients_ = false;
};

// Operator sugar for builder code.
inline Var operator+(Var a, Var b) { return a.tape->add(a, b); }
inline Var operator-(Var a, Var b) { return a.tape->sub(a, b); }
inline Var operator*(Var a, Var b) { return a.tape->mul(a, b); }
inline Var matmul(Var a, Var b) { return a.tape->matmul(a, b); }

}  // namespace reactmotion::diff
