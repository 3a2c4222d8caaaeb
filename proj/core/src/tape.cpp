#include "reactmotion/tape.hpp"

#include <algorithm>
#include <cmath>

namespace reactmotion::diff {

const char* op_name(OpKind op) {
  switch (op) {
    case OpKind::kInput: return "input";
    case OpKind::kConstant: return "constant";
    case OpKind::kParam: return "param";
    case OpKind::kMatMul: return "matmul";
    case OpKind::kAdd: return "add";
    case OpKind::kMul: return "mul";
    case OpKind::kConcat: return "concat";
    case OpKind::kSlice: return "slice";
    case OpKind::kSigmoid: return "sigmoid";
    case OpKind::kTanh: return "tanh";
    case OpKind::kSoftmax: return "softmax";
    case OpKind::kLog: return "log";
    case OpKind::kExp: return "exp";
    case OpKind::kSquare: return "square";
    case OpKind::kAbs: return "abs";
    case OpKind::kMaxScalar: return "max-scalar";
    case OpKind::kSum: return "sum";
    case OpKind::kMean: return "mean";
  }
  return "?";
}

const Tensor& Var::value() const { return tape->value(*this); }
const Tensor& Var::grad() const { return tape->grad(*this); }

namespace {

double stable_sigmoid(double x) {
  if (x >= 0.0) {
    return 1.0 / (1.0 + std::exp(-x));
  }
  const double e = std::exp(x);
  return e / (1.0 + e);
}

// Keeps exp() away from full underflow so softmax outputs stay positive.
constexpr double kSoftmaxShiftFloor = -700.0;

}  // namespace

Var Tape::push(ComputeNode n) {
  const int id = static_cast<int>(nodes_.size());
  nodes_.push_back(std::move(n));
  eval_node(id);
  return Var{this, id};
}

void Tape::fail_shape(const ComputeNode& n, int id, const std::string& detail) const {
  std::string msg = "node #" + std::to_string(id) + " (" + op_name(n.op) + ")";
  if (!n.label.empty()) msg += " '" + n.label + "'";
  msg += ": " + detail;
  throw ShapeError(msg);
}

Var Tape::input(std::string name, Tensor value) {
  ComputeNode n;
  n.op = OpKind::kInput;
  n.value = std::move(value);
  n.label = name;
  Var v = push(std::move(n));
  inputs_by_name_[std::move(name)] = v.id;
  return v;
}

Var Tape::constant(Tensor value) {
  ComputeNode n;
  n.op = OpKind::kConstant;
  n.value = std::move(value);
  return push(std::move(n));
}

Var Tape::param(std::string_view name) {
  if (store_ == nullptr) {
    throw GraphError("tape has no parameter store bound");
  }
  const int idx = store_->index_of(name);
  if (idx < 0) {
    throw GraphError("unknown parameter '" + std::string(name) + "'");
  }
  ComputeNode n;
  n.op = OpKind::kParam;
  n.param_index = idx;
  n.label = std::string(name);
  return push(std::move(n));
}

Var Tape::matmul(Var a, Var b) {
  ComputeNode n;
  n.op = OpKind::kMatMul;
  n.inputs = {a.id, b.id};
  return push(std::move(n));
}

Var Tape::add(Var a, Var b) {
  ComputeNode n;
  n.op = OpKind::kAdd;
  n.inputs = {a.id, b.id};
  return push(std::move(n));
}

Var Tape::mul(Var a, Var b) {
  ComputeNode n;
  n.op = OpKind::kMul;
  n.inputs = {a.id, b.id};
  return push(std::move(n));
}

Var Tape::concat(std::span<const Var> parts, int axis) {
  ComputeNode n;
  n.op = OpKind::kConcat;
  n.axis = axis;
  for (const Var& v : parts) n.inputs.push_back(v.id);
  return push(std::move(n));
}

Var Tape::concat(std::initializer_list<Var> parts, int axis) {
  return concat(std::span<const Var>(parts.begin(), parts.size()), axis);
}

Var Tape::slice(Var a, int axis, int offset, int extent) {
  ComputeNode n;
  n.op = OpKind::kSlice;
  n.inputs = {a.id};
  n.axis = axis;
  n.offset = offset;
  n.extent = extent;
  return push(std::move(n));
}

Var Tape::sigmoid(Var a) {
  ComputeNode n;
  n.op = OpKind::kSigmoid;
  n.inputs = {a.id};
  return push(std::move(n));
}

Var Tape::tanh(Var a) {
  ComputeNode n;
  n.op = OpKind::kTanh;
  n.inputs = {a.id};
  return push(std::move(n));
}

Var Tape::softmax(Var a) {
  ComputeNode n;
  n.op = OpKind::kSoftmax;
  n.inputs = {a.id};
  return push(std::move(n));
}

Var Tape::log(Var a) {
  ComputeNode n;
  n.op = OpKind::kLog;
  n.inputs = {a.id};
  return push(std::move(n));
}

Var Tape::exp(Var a) {
  ComputeNode n;
  n.op = OpKind::kExp;
  n.inputs = {a.id};
  return push(std::move(n));
}

Var Tape::square(Var a) {
  ComputeNode n;
  n.op = OpKind::kSquare;
  n.inputs = {a.id};
  return push(std::move(n));
}

Var Tape::abs(Var a) {
  ComputeNode n;
  n.op = OpKind::kAbs;
  n.inputs = {a.id};
  return push(std::move(n));
}

Var Tape::max_scalar(Var a, double floor) {
  ComputeNode n;
  n.op = OpKind::kMaxScalar;
  n.inputs = {a.id};
  n.scalar = floor;
  return push(std::move(n));
}

Var Tape::sum(Var a) {
  ComputeNode n;
  n.op = OpKind::kSum;
  n.inputs = {a.id};
  return push(std::move(n));
}

Var Tape::mean(Var a) {
  ComputeNode n;
  n.op = OpKind::kMean;
  n.inputs = {a.id};
  return push(std::move(n));
}

Var Tape::scale(Var a, double s) {
  const Tensor& av = value(a);
  return mul(a, constant(Tensor(av.rows(), av.cols(), s)));
}

Var Tape::add_scalar(Var a, double c) {
  const Tensor& av = value(a);
  return add(a, constant(Tensor(av.rows(), av.cols(), c)));
}

void Tape::set_input(std::string_view name, Tensor value) {
  auto it = inputs_by_name_.find(std::string(name));
  if (it == inputs_by_name_.end()) {
    throw GraphError("unknown input '" + std::string(name) + "'");
  }
  ComputeNode& n = nodes_[static_cast<std::size_t>(it->second)];
  if (!n.value.same_shape(value)) {
    fail_shape(n, it->second,
               "rebind shape " + value.shape_str() + " != " + n.value.shape_str());
  }
  n.value = std::move(value);
}

void Tape::eval_node(int id) {
  ComputeNode& n = nodes_[static_cast<std::size_t>(id)];
  const auto in = [&](int k) -> const Tensor& {
    return nodes_[static_cast<std::size_t>(n.inputs[static_cast<std::size_t>(k)])].value;
  };
  switch (n.op) {
    case OpKind::kInput:
    case OpKind::kConstant:
      break;
    case OpKind::kParam:
      n.value = store_->at_index(n.param_index);
      break;
    case OpKind::kMatMul: {
      const Tensor& a = in(0);
      const Tensor& b = in(1);
      if (a.cols() != b.rows()) {
        fail_shape(n, id, "inner dimensions disagree, " + a.shape_str() + " * " + b.shape_str());
      }
      n.value = diff::matmul(a, b);
      break;
    }
    case OpKind::kAdd: {
      const Tensor& a = in(0);
      const Tensor& b = in(1);
      if (!a.same_shape(b)) {
        fail_shape(n, id, "operands " + a.shape_str() + " vs " + b.shape_str());
      }
      Tensor out = a;
      for (int i = 0; i < out.size(); ++i) out[i] += b[i];
      n.value = std::move(out);
      break;
    }
    case OpKind::kMul: {
      const Tensor& a = in(0);
      const Tensor& b = in(1);
      if (!a.same_shape(b)) {
        fail_shape(n, id, "operands " + a.shape_str() + " vs " + b.shape_str());
      }
      Tensor out = a;
      for (int i = 0; i < out.size(); ++i) out[i] *= b[i];
      n.value = std::move(out);
      break;
    }
    case OpKind::kConcat: {
      if (n.inputs.empty()) fail_shape(n, id, "no inputs");
      if (n.axis != 0 && n.axis != 1) fail_shape(n, id, "axis must be 0 or 1");
      int rows = 0, cols = 0;
      if (n.axis == 0) {
        cols = in(0).cols();
        for (std::size_t k = 0; k < n.inputs.size(); ++k) {
          const Tensor& t = in(static_cast<int>(k));
          if (t.cols() != cols) fail_shape(n, id, "column count mismatch at input " + std::to_string(k));
          rows += t.rows();
        }
        Tensor out(rows, cols);
        int r0 = 0;
        for (std::size_t k = 0; k < n.inputs.size(); ++k) {
          const Tensor& t = in(static_cast<int>(k));
          for (int r = 0; r < t.rows(); ++r)
            for (int c = 0; c < cols; ++c) out(r0 + r, c) = t(r, c);
          r0 += t.rows();
        }
        n.value = std::move(out);
      } else {
        rows = in(0).rows();
        for (std::size_t k = 0; k < n.inputs.size(); ++k) {
          const Tensor& t = in(static_cast<int>(k));
          if (t.rows() != rows) fail_shape(n, id, "row count mismatch at input " + std::to_string(k));
          cols += t.cols();
        }
        Tensor out(rows, cols);
        int c0 = 0;
        for (std::size_t k = 0; k < n.inputs.size(); ++k) {
          const Tensor& t = in(static_cast<int>(k));
          for (int r = 0; r < rows; ++r)
            for (int c = 0; c < t.cols(); ++c) out(r, c0 + c) = t(r, c);
          c0 += t.cols();
        }
        n.value = std::move(out);
      }
      break;
    }
    case OpKind::kSlice: {
      const Tensor& a = in(0);
      if (n.axis != 0 && n.axis != 1) fail_shape(n, id, "axis must be 0 or 1");
      const int limit = n.axis == 0 ? a.rows() : a.cols();
      if (n.offset < 0 || n.extent <= 0 || n.offset + n.extent > limit) {
        fail_shape(n, id, "range [" + std::to_string(n.offset) + ", " +
                              std::to_string(n.offset + n.extent) + ") out of " +
                              a.shape_str());
      }
      if (n.axis == 0) {
        Tensor out(n.extent, a.cols());
        for (int r = 0; r < n.extent; ++r)
          for (int c = 0; c < a.cols(); ++c) out(r, c) = a(n.offset + r, c);
        n.value = std::move(out);
      } else {
        Tensor out(a.rows(), n.extent);
        for (int r = 0; r < a.rows(); ++r)
          for (int c = 0; c < n.extent; ++c) out(r, c) = a(r, n.offset + c);
        n.value = std::move(out);
      }
      break;
    }
    case OpKind::kSigmoid: {
      Tensor out = in(0);
      for (int i = 0; i < out.size(); ++i) out[i] = stable_sigmoid(out[i]);
      n.value = std::move(out);
      break;
    }
    case OpKind::kTanh: {
      Tensor out = in(0);
      for (int i = 0; i < out.size(); ++i) out[i] = std::tanh(out[i]);
      n.value = std::move(out);
      break;
    }
    case OpKind::kSoftmax: {
      const Tensor& a = in(0);
      if (a.rows() == 0 || a.cols() == 0) fail_shape(n, id, "empty operand");
      Tensor out(a.rows(), a.cols());
      for (int c = 0; c < a.cols(); ++c) {
        double mx = a(0, c);
        for (int r = 1; r < a.rows(); ++r) mx = std::max(mx, a(r, c));
        double denom = 0.0;
        for (int r = 0; r < a.rows(); ++r) {
          const double z = std::max(a(r, c) - mx, kSoftmaxShiftFloor);
          const double e = std::exp(z);
          out(r, c) = e;
          denom += e;
        }
        for (int r = 0; r < a.rows(); ++r) out(r, c) /= denom;
      }
      n.value = std::move(out);
      break;
    }
    case OpKind::kLog: {
      Tensor out = in(0);
      for (int i = 0; i < out.size(); ++i) out[i] = std::log(out[i]);
      n.value = std::move(out);
      break;
    }
    case OpKind::kExp: {
      Tensor out = in(0);
      for (int i = 0; i < out.size(); ++i) out[i] = std::exp(out[i]);
      n.value = std::move(out);
      break;
    }
    case OpKind::kSquare: {
      Tensor out = in(0);
      for (int i = 0; i < out.size(); ++i) out[i] *= out[i];
      n.value = std::move(out);
      break;
    }
    case OpKind::kAbs: {
      Tensor out = in(0);
      for (int i = 0; i < out.size(); ++i) out[i] = std::abs(out[i]);
      n.value = std::move(out);
      break;
    }
    case OpKind::kMaxScalar: {
      Tensor out = in(0);
      for (int i = 0; i < out.size(); ++i) out[i] = std::max(out[i], n.scalar);
      n.value = std::move(out);
      break;
    }
    case OpKind::kSum: {
      const Tensor& a = in(0);
      double s = 0.0;
      for (int i = 0; i < a.size(); ++i) s += a[i];
      n.value = Tensor::scalar(s);
      break;
    }
    case OpKind::kMean: {
      const Tensor& a = in(0);
      if (a.size() == 0) fail_shape(n, id, "mean of empty tensor");
      double s = 0.0;
      for (int i = 0; i < a.size(); ++i) s += a[i];
      n.value = Tensor::scalar(s / a.size());
      break;
    }
  }
}

void Tape::forward() {
  for (int id = 0; id < size(); ++id) eval_node(id);
}

const Tensor& Tape::grad(Var v) const {
  if (!has_gradients_) throw GraphError("grad() before backward()");
  return node(v.id).grad;
}

void Tape::backward(Var output) {
  if (output.tape != this || output.id < 0 || output.id >= size()) {
    throw GraphError("backward: output is not a node of this tape");
  }
  {
    const Tensor& out = node(output.id).value;
    if (out.rows() != 1 || out.cols() != 1) {
      throw GraphError("backward: output node #" + std::to_string(output.id) + " is " +
                       out.shape_str() + ", expected a scalar");
    }
  }
  for (ComputeNode& n : nodes_) {
    n.grad = Tensor::zeros_like(n.value);
  }
  nodes_[static_cast<std::size_t>(output.id)].grad[0] = 1.0;

  for (int id = output.id; id >= 0; --id) {
    ComputeNode& n = nodes_[static_cast<std::size_t>(id)];
    const Tensor& g = n.grad;
    const auto inode = [&](int k) -> ComputeNode& {
      return nodes_[static_cast<std::size_t>(n.inputs[static_cast<std::size_t>(k)])];
    };
    switch (n.op) {
      case OpKind::kInput:
      case OpKind::kConstant:
      case OpKind::kParam:
        break;
      case OpKind::kMatMul: {
        ComputeNode& a = inode(0);
        ComputeNode& b = inode(1);
        // dA += g * B^T
        for (int i = 0; i < a.value.rows(); ++i)
          for (int j = 0; j < g.cols(); ++j) {
            const double gij = g(i, j);
            if (gij == 0.0) continue;
            for (int k = 0; k < a.value.cols(); ++k) a.grad(i, k) += gij * b.value(k, j);
          }
        // dB += A^T * g
        for (int k = 0; k < b.value.rows(); ++k)
          for (int i = 0; i < g.rows(); ++i) {
            const double aik = a.value(i, k);
            if (aik == 0.0) continue;
            for (int j = 0; j < g.cols(); ++j) b.grad(k, j) += aik * g(i, j);
          }
        break;
      }
      case OpKind::kAdd: {
        inode(0).grad.add_scaled(g, 1.0);
        inode(1).grad.add_scaled(g, 1.0);
        break;
      }
      case OpKind::kMul: {
        ComputeNode& a = inode(0);
        ComputeNode& b = inode(1);
        for (int i = 0; i < g.size(); ++i) {
          a.grad[i] += b.value[i] * g[i];
          b.grad[i] += a.value[i] * g[i];
        }
        break;
      }
      case OpKind::kConcat: {
        int pos = 0;
        for (std::size_t k = 0; k < n.inputs.size(); ++k) {
          ComputeNode& a = inode(static_cast<int>(k));
          if (n.axis == 0) {
            for (int r = 0; r < a.value.rows(); ++r)
              for (int c = 0; c < a.value.cols(); ++c) a.grad(r, c) += g(pos + r, c);
            pos += a.value.rows();
          } else {
            for (int r = 0; r < a.value.rows(); ++r)
              for (int c = 0; c < a.value.cols(); ++c) a.grad(r, c) += g(r, pos + c);
            pos += a.value.cols();
          }
        }
        break;
      }
      case OpKind::kSlice: {
        ComputeNode& a = inode(0);
        if (n.axis == 0) {
          for (int r = 0; r < n.extent; ++r)
            for (int c = 0; c < g.cols(); ++c) a.grad(n.offset + r, c) += g(r, c);
        } else {
          for (int r = 0; r < g.rows(); ++r)
            for (int c = 0; c < n.extent; ++c) a.grad(r, n.offset + c) += g(r, c);
        }
        break;
      }
      case OpKind::kSigmoid: {
        ComputeNode& a = inode(0);
        for (int i = 0; i < g.size(); ++i) {
          const double y = n.value[i];
          a.grad[i] += y * (1.0 - y) * g[i];
        }
        break;
      }
      case OpKind::kTanh: {
        ComputeNode& a = inode(0);
        for (int i = 0; i < g.size(); ++i) {
          const double y = n.value[i];
          a.grad[i] += (1.0 - y * y) * g[i];
        }
        break;
      }
      case OpKind::kSoftmax: {
        ComputeNode& a = inode(0);
        for (int c = 0; c < g.cols(); ++c) {
          double dot = 0.0;
          for (int r = 0; r < g.rows(); ++r) dot += g(r, c) * n.value(r, c);
          for (int r = 0; r < g.rows(); ++r) {
            a.grad(r, c) += n.value(r, c) * (g(r, c) - dot);
          }
        }
        break;
      }
      case OpKind::kLog: {
        ComputeNode& a = inode(0);
        for (int i = 0; i < g.size(); ++i) a.grad[i] += g[i] / a.value[i];
        break;
      }
      case OpKind::kExp: {
        ComputeNode& a = inode(0);
        for (int i = 0; i < g.size(); ++i) a.grad[i] += n.value[i] * g[i];
        break;
      }
      case OpKind::kSquare: {
        ComputeNode& a = inode(0);
        for (int i = 0; i < g.size(); ++i) a.grad[i] += 2.0 * a.value[i] * g[i];
        break;
      }
      case OpKind::kAbs: {
        ComputeNode& a = inode(0);
        for (int i = 0; i < g.size(); ++i) {
          const double x = a.value[i];
          a.grad[i] += (x > 0.0 ? 1.0 : (x < 0.0 ? -1.0 : 0.0)) * g[i];
        }
        break;
      }
      case OpKind::kMaxScalar: {
        ComputeNode& a = inode(0);
        for (int i = 0; i < g.size(); ++i) {
          if (a.value[i] > n.scalar) a.grad[i] += g[i];
        }
        break;
      }
      case OpKind::kSum: {
        ComputeNode& a = inode(0);
        const double gs = g[0];
        for (int i = 0; i < a.grad.size(); ++i) a.grad[i] += gs;
        break;
      }
      case OpKind::kMean: {
        ComputeNode& a = inode(0);
        const double gs = g[0] / a.value.size();
        for (int i = 0; i < a.grad.size(); ++i) a.grad[i] += gs;
        break;
      }
    }
  }
  has_gradients_ = true;
}

Gradients Tape::param_gradients() const {
  if (store_ == nullptr) throw GraphError("tape has no parameter store bound");
  if (!has_gradients_) throw GraphError("param_gradients() before backward()");
  Gradients out(*store_);
  for (const ComputeNode& n : nodes_) {
    if (n.op == OpKind::kParam) {
      out.at_index(n.param_index).add_scaled(n.grad, 1.0);
    }
  }
  return out;
}

}  // namespace reactmotion::diff
