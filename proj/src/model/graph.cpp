// SPDX-License-Identifier: Apache-2.0

#include "wenyan/model/graph.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include <Eigen/Dense>

#include "wenyan/common/errors.hpp"

namespace wenyan {

namespace {

using RowMat =
    Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using MapMat = Eigen::Map<RowMat>;
using CMapMat = Eigen::Map<const RowMat>;

CMapMat as_mat(const Tensor& t) {
    return CMapMat(t.data.data(), static_cast<Eigen::Index>(t.rows()),
                   static_cast<Eigen::Index>(t.cols()));
}

MapMat as_mat(Tensor& t) {
    return MapMat(t.data.data(), static_cast<Eigen::Index>(t.rows()),
                  static_cast<Eigen::Index>(t.cols()));
}

void check_2d(const Tensor& t, const char* op) {
    if (t.ndim() != 2) {
        throw ShapeMismatch(std::string(op) + ": expected 2-D tensor, got " +
                            t.shape_str());
    }
}

constexpr double kLnEps = 1e-5;

}  // namespace

NodeId Graph::push(Tensor value, bool requires_grad,
                   std::function<void(Graph&, NodeId)> backward_fn) {
    nodes_.push_back(Node{std::move(value), Tensor{}, std::move(backward_fn),
                          requires_grad});
    return static_cast<NodeId>(nodes_.size() - 1);
}

NodeId Graph::leaf(Tensor value, bool requires_grad) {
    return push(std::move(value), requires_grad, nullptr);
}

Tensor& Graph::grad_buffer(NodeId id) {
    Node& n = nodes_[size_t(id)];
    if (n.grad.shape.empty()) n.grad = Tensor::zeros(n.value.shape);
    return n.grad;
}

void Graph::backward(NodeId root) {
    if (backward_done_) {
        throw GraphReused("backward already ran on this graph");
    }
    backward_done_ = true;
    Node& r = nodes_[size_t(root)];
    if (r.value.numel() != 1) {
        throw ShapeMismatch("backward root must be scalar, got " +
                            r.value.shape_str());
    }
    grad_buffer(root)[0] = 1.0;
    for (NodeId id = root; id >= 0; --id) {
        Node& n = nodes_[size_t(id)];
        if (n.requires_grad && n.backward_fn && has_grad(id)) {
            n.backward_fn(*this, id);
        }
    }
}

NodeId Graph::matmul(NodeId a, NodeId b) {
    const Tensor& ta = value(a);
    const Tensor& tb = value(b);
    check_2d(ta, "matmul");
    check_2d(tb, "matmul");
    if (ta.shape[1] != tb.shape[0]) {
        throw ShapeMismatch("matmul: " + ta.shape_str() + " x " +
                            tb.shape_str());
    }
    Tensor out = Tensor::zeros({ta.shape[0], tb.shape[1]});
    if (out.numel() > 0 && ta.shape[1] > 0) {
        as_mat(out).noalias() = as_mat(ta) * as_mat(tb);
    }
    const bool rg = requires_grad(a) || requires_grad(b);
    return push(std::move(out), rg, [a, b](Graph& g, NodeId self) {
        const Tensor& go = g.grad(self);
        if (go.numel() == 0) return;
        if (g.requires_grad(a)) {
            as_mat(g.grad_buffer(a)).noalias() +=
                as_mat(go) * as_mat(g.value(b)).transpose();
        }
        if (g.requires_grad(b)) {
            as_mat(g.grad_buffer(b)).noalias() +=
                as_mat(g.value(a)).transpose() * as_mat(go);
        }
    });
}

NodeId Graph::transpose(NodeId a) {
    const Tensor& ta = value(a);
    check_2d(ta, "transpose");
    Tensor out = Tensor::zeros({ta.shape[1], ta.shape[0]});
    if (out.numel() > 0) as_mat(out) = as_mat(ta).transpose();
    return push(std::move(out), requires_grad(a),
                [a](Graph& g, NodeId self) {
                    if (!g.requires_grad(a) || g.value(self).numel() == 0) {
                        return;
                    }
                    as_mat(g.grad_buffer(a)) +=
                        as_mat(g.grad(self)).transpose();
                });
}

NodeId Graph::add(NodeId a, NodeId b) {
    const Tensor& ta = value(a);
    const Tensor& tb = value(b);
    if (!ta.same_shape(tb)) {
        throw ShapeMismatch("add: " + ta.shape_str() + " vs " +
                            tb.shape_str());
    }
    Tensor out = ta;
    for (size_t i = 0; i < out.data.size(); ++i) out.data[i] += tb.data[i];
    const bool rg = requires_grad(a) || requires_grad(b);
    return push(std::move(out), rg, [a, b](Graph& g, NodeId self) {
        const Tensor& go = g.grad(self);
        for (NodeId in : {a, b}) {
            if (!g.requires_grad(in)) continue;
            Tensor& gi = g.grad_buffer(in);
            for (size_t i = 0; i < gi.data.size(); ++i) {
                gi.data[i] += go.data[i];
            }
        }
    });
}

NodeId Graph::add_rowvec(NodeId a, NodeId v) {
    const Tensor& ta = value(a);
    const Tensor& tv = value(v);
    check_2d(ta, "add_rowvec");
    if (tv.numel() != ta.cols()) {
        throw ShapeMismatch("add_rowvec: " + ta.shape_str() + " + " +
                            tv.shape_str());
    }
    Tensor out = ta;
    const size_t cols = ta.cols();
    for (size_t r = 0; r < ta.rows(); ++r) {
        for (size_t c = 0; c < cols; ++c) out.at(r, c) += tv[c];
    }
    const bool rg = requires_grad(a) || requires_grad(v);
    return push(std::move(out), rg, [a, v, cols](Graph& g, NodeId self) {
        const Tensor& go = g.grad(self);
        if (g.requires_grad(a)) {
            Tensor& ga = g.grad_buffer(a);
            for (size_t i = 0; i < ga.data.size(); ++i) {
                ga.data[i] += go.data[i];
            }
        }
        if (g.requires_grad(v)) {
            Tensor& gv = g.grad_buffer(v);
            for (size_t r = 0; r < go.rows(); ++r) {
                for (size_t c = 0; c < cols; ++c) gv[c] += go.at(r, c);
            }
        }
    });
}

NodeId Graph::mul_scalar(NodeId a, double s) {
    Tensor out = value(a);
    for (double& x : out.data) x *= s;
    return push(std::move(out), requires_grad(a),
                [a, s](Graph& g, NodeId self) {
                    if (!g.requires_grad(a)) return;
                    const Tensor& go = g.grad(self);
                    Tensor& ga = g.grad_buffer(a);
                    for (size_t i = 0; i < ga.data.size(); ++i) {
                        ga.data[i] += s * go.data[i];
                    }
                });
}

NodeId Graph::add_mask(NodeId a, Tensor mask) {
    const Tensor& ta = value(a);
    if (!ta.same_shape(mask)) {
        throw ShapeMismatch("add_mask: " + ta.shape_str() + " vs " +
                            mask.shape_str());
    }
    Tensor out = ta;
    for (size_t i = 0; i < out.data.size(); ++i) out.data[i] += mask.data[i];
    return push(std::move(out), requires_grad(a),
                [a](Graph& g, NodeId self) {
                    if (!g.requires_grad(a)) return;
                    const Tensor& go = g.grad(self);
                    Tensor& ga = g.grad_buffer(a);
                    for (size_t i = 0; i < ga.data.size(); ++i) {
                        ga.data[i] += go.data[i];
                    }
                });
}

NodeId Graph::gelu(NodeId a) {
    // tanh approximation; smooth everywhere, which keeps finite-difference
    // probes well-conditioned.
    const Tensor& ta = value(a);
    Tensor out = ta;
    const double k = std::sqrt(2.0 / std::numbers::pi);
    for (double& x : out.data) {
        const double u = k * (x + 0.044715 * x * x * x);
        x = 0.5 * x * (1.0 + std::tanh(u));
    }
    return push(std::move(out), requires_grad(a),
                [a, k](Graph& g, NodeId self) {
                    if (!g.requires_grad(a)) return;
                    const Tensor& go = g.grad(self);
                    const Tensor& in = g.value(a);
                    Tensor& ga = g.grad_buffer(a);
                    for (size_t i = 0; i < ga.data.size(); ++i) {
                        const double x = in.data[i];
                        const double u = k * (x + 0.044715 * x * x * x);
                        const double t = std::tanh(u);
                        const double sech2 = 1.0 - t * t;
                        const double du = k * (1.0 + 3.0 * 0.044715 * x * x);
                        const double d =
                            0.5 * (1.0 + t) + 0.5 * x * sech2 * du;
                        ga.data[i] += d * go.data[i];
                    }
                });
}

NodeId Graph::layer_norm(NodeId x, NodeId gain, NodeId bias) {
    const Tensor& tx = value(x);
    const Tensor& tg = value(gain);
    const Tensor& tb = value(bias);
    check_2d(tx, "layer_norm");
    const size_t n = tx.cols();
    if (tg.numel() != n || tb.numel() != n) {
        throw ShapeMismatch("layer_norm: gain/bias length must equal cols");
    }
    Tensor out = Tensor::zeros(tx.shape);
    Tensor xhat = Tensor::zeros(tx.shape);
    Tensor inv_sigma = Tensor::zeros({tx.rows()});
    for (size_t r = 0; r < tx.rows(); ++r) {
        double mean = 0.0;
        for (size_t c = 0; c < n; ++c) mean += tx.at(r, c);
        mean /= static_cast<double>(n);
        double var = 0.0;
        for (size_t c = 0; c < n; ++c) {
            const double d = tx.at(r, c) - mean;
            var += d * d;
        }
        var /= static_cast<double>(n);
        const double inv = 1.0 / std::sqrt(var + kLnEps);
        inv_sigma[r] = inv;
        for (size_t c = 0; c < n; ++c) {
            const double xh = (tx.at(r, c) - mean) * inv;
            xhat.at(r, c) = xh;
            out.at(r, c) = tg[c] * xh + tb[c];
        }
    }
    const bool rg =
        requires_grad(x) || requires_grad(gain) || requires_grad(bias);
    return push(
        std::move(out), rg,
        [x, gain, bias, n, xhat = std::move(xhat),
         inv_sigma = std::move(inv_sigma)](Graph& g, NodeId self) {
            const Tensor& go = g.grad(self);
            const Tensor& tg = g.value(gain);
            for (size_t r = 0; r < go.rows(); ++r) {
                if (g.requires_grad(gain)) {
                    Tensor& gg = g.grad_buffer(gain);
                    for (size_t c = 0; c < n; ++c) {
                        gg[c] += go.at(r, c) * xhat.at(r, c);
                    }
                }
                if (g.requires_grad(bias)) {
                    Tensor& gb = g.grad_buffer(bias);
                    for (size_t c = 0; c < n; ++c) gb[c] += go.at(r, c);
                }
                if (g.requires_grad(x)) {
                    // dxhat = go * gain; dx = inv_sigma *
                    //   (dxhat - mean(dxhat) - xhat * mean(dxhat * xhat))
                    double mean_dxh = 0.0;
                    double mean_dxh_xh = 0.0;
                    for (size_t c = 0; c < n; ++c) {
                        const double dxh = go.at(r, c) * tg[c];
                        mean_dxh += dxh;
                        mean_dxh_xh += dxh * xhat.at(r, c);
                    }
                    mean_dxh /= static_cast<double>(n);
                    mean_dxh_xh /= static_cast<double>(n);
                    Tensor& gx = g.grad_buffer(x);
                    for (size_t c = 0; c < n; ++c) {
                        const double dxh = go.at(r, c) * tg[c];
                        gx.at(r, c) +=
                            inv_sigma[r] * (dxh - mean_dxh -
                                            xhat.at(r, c) * mean_dxh_xh);
                    }
                }
            }
        });
}

NodeId Graph::softmax_rows(NodeId a) {
    const Tensor& ta = value(a);
    check_2d(ta, "softmax_rows");
    Tensor out = ta;
    const size_t n = ta.cols();
    for (size_t r = 0; r < ta.rows(); ++r) {
        double mx = -std::numeric_limits<double>::infinity();
        for (size_t c = 0; c < n; ++c) mx = std::max(mx, out.at(r, c));
        double sum = 0.0;
        for (size_t c = 0; c < n; ++c) {
            out.at(r, c) = std::exp(out.at(r, c) - mx);
            sum += out.at(r, c);
        }
        for (size_t c = 0; c < n; ++c) out.at(r, c) /= sum;
    }
    return push(std::move(out), requires_grad(a),
                [a, n](Graph& g, NodeId self) {
                    if (!g.requires_grad(a)) return;
                    const Tensor& go = g.grad(self);
                    const Tensor& y = g.value(self);
                    Tensor& ga = g.grad_buffer(a);
                    for (size_t r = 0; r < y.rows(); ++r) {
                        double dot = 0.0;
                        for (size_t c = 0; c < n; ++c) {
                            dot += go.at(r, c) * y.at(r, c);
                        }
                        for (size_t c = 0; c < n; ++c) {
                            ga.at(r, c) +=
                                y.at(r, c) * (go.at(r, c) - dot);
                        }
                    }
                });
}

NodeId Graph::log_softmax_rows(NodeId a) {
    const Tensor& ta = value(a);
    check_2d(ta, "log_softmax_rows");
    Tensor out = ta;
    const size_t n = ta.cols();
    for (size_t r = 0; r < ta.rows(); ++r) {
        double mx = -std::numeric_limits<double>::infinity();
        for (size_t c = 0; c < n; ++c) mx = std::max(mx, out.at(r, c));
        double sum = 0.0;
        for (size_t c = 0; c < n; ++c) sum += std::exp(out.at(r, c) - mx);
        const double lse = mx + std::log(sum);
        for (size_t c = 0; c < n; ++c) out.at(r, c) -= lse;
    }
    return push(std::move(out), requires_grad(a),
                [a, n](Graph& g, NodeId self) {
                    if (!g.requires_grad(a)) return;
                    const Tensor& go = g.grad(self);
                    const Tensor& y = g.value(self);
                    Tensor& ga = g.grad_buffer(a);
                    for (size_t r = 0; r < y.rows(); ++r) {
                        double total = 0.0;
                        for (size_t c = 0; c < n; ++c) total += go.at(r, c);
                        for (size_t c = 0; c < n; ++c) {
                            ga.at(r, c) += go.at(r, c) -
                                           std::exp(y.at(r, c)) * total;
                        }
                    }
                });
}

NodeId Graph::embedding_gather(NodeId table, std::vector<int32_t> ids) {
    const Tensor& tt = value(table);
    check_2d(tt, "embedding_gather");
    const size_t d = tt.cols();
    Tensor out = Tensor::zeros({ids.size(), d});
    for (size_t r = 0; r < ids.size(); ++r) {
        const auto id = static_cast<size_t>(ids[r]);
        if (ids[r] < 0 || id >= tt.rows()) {
            throw ShapeMismatch("embedding_gather: id out of range");
        }
        for (size_t c = 0; c < d; ++c) out.at(r, c) = tt.at(id, c);
    }
    return push(std::move(out), requires_grad(table),
                [table, ids = std::move(ids), d](Graph& g, NodeId self) {
                    if (!g.requires_grad(table)) return;
                    const Tensor& go = g.grad(self);
                    Tensor& gt = g.grad_buffer(table);
                    for (size_t r = 0; r < ids.size(); ++r) {
                        const auto id = static_cast<size_t>(ids[r]);
                        for (size_t c = 0; c < d; ++c) {
                            gt.at(id, c) += go.at(r, c);
                        }
                    }
                });
}

NodeId Graph::select_rows(NodeId a, std::vector<size_t> rows) {
    const Tensor& ta = value(a);
    check_2d(ta, "select_rows");
    const size_t d = ta.cols();
    Tensor out = Tensor::zeros({rows.size(), d});
    for (size_t r = 0; r < rows.size(); ++r) {
        if (rows[r] >= ta.rows()) {
            throw ShapeMismatch("select_rows: row out of range");
        }
        for (size_t c = 0; c < d; ++c) out.at(r, c) = ta.at(rows[r], c);
    }
    return push(std::move(out), requires_grad(a),
                [a, rows = std::move(rows), d](Graph& g, NodeId self) {
                    if (!g.requires_grad(a)) return;
                    const Tensor& go = g.grad(self);
                    Tensor& ga = g.grad_buffer(a);
                    for (size_t r = 0; r < rows.size(); ++r) {
                        for (size_t c = 0; c < d; ++c) {
                            ga.at(rows[r], c) += go.at(r, c);
                        }
                    }
                });
}

NodeId Graph::slice_cols(NodeId a, size_t lo, size_t hi) {
    const Tensor& ta = value(a);
    check_2d(ta, "slice_cols");
    if (lo > hi || hi > ta.cols()) {
        throw ShapeMismatch("slice_cols: bad range");
    }
    const size_t w = hi - lo;
    Tensor out = Tensor::zeros({ta.rows(), w});
    for (size_t r = 0; r < ta.rows(); ++r) {
        for (size_t c = 0; c < w; ++c) out.at(r, c) = ta.at(r, lo + c);
    }
    return push(std::move(out), requires_grad(a),
                [a, lo, w](Graph& g, NodeId self) {
                    if (!g.requires_grad(a)) return;
                    const Tensor& go = g.grad(self);
                    Tensor& ga = g.grad_buffer(a);
                    for (size_t r = 0; r < go.rows(); ++r) {
                        for (size_t c = 0; c < w; ++c) {
                            ga.at(r, lo + c) += go.at(r, c);
                        }
                    }
                });
}

NodeId Graph::concat_cols(const std::vector<NodeId>& parts) {
    if (parts.empty()) throw ShapeMismatch("concat_cols: no inputs");
    const size_t rows = value(parts[0]).rows();
    size_t total = 0;
    bool rg = false;
    for (NodeId p : parts) {
        check_2d(value(p), "concat_cols");
        if (value(p).rows() != rows) {
            throw ShapeMismatch("concat_cols: row mismatch");
        }
        total += value(p).cols();
        rg = rg || requires_grad(p);
    }
    Tensor out = Tensor::zeros({rows, total});
    size_t off = 0;
    for (NodeId p : parts) {
        const Tensor& tp = value(p);
        for (size_t r = 0; r < rows; ++r) {
            for (size_t c = 0; c < tp.cols(); ++c) {
                out.at(r, off + c) = tp.at(r, c);
            }
        }
        off += tp.cols();
    }
    return push(std::move(out), rg,
                [parts](Graph& g, NodeId self) {
                    const Tensor& go = g.grad(self);
                    size_t off = 0;
                    for (NodeId p : parts) {
                        const size_t w = g.value(p).cols();
                        if (g.requires_grad(p)) {
                            Tensor& gp = g.grad_buffer(p);
                            for (size_t r = 0; r < go.rows(); ++r) {
                                for (size_t c = 0; c < w; ++c) {
                                    gp.at(r, c) += go.at(r, off + c);
                                }
                            }
                        }
                        off += w;
                    }
                });
}

NodeId Graph::nll_sum(NodeId logprobs, std::vector<int32_t> targets) {
    const Tensor& lp = value(logprobs);
    check_2d(lp, "nll_sum");
    if (targets.size() != lp.rows()) {
        throw ShapeMismatch("nll_sum: one target per row required");
    }
    double total = 0.0;
    for (size_t r = 0; r < targets.size(); ++r) {
        const auto t = static_cast<size_t>(targets[r]);
        if (targets[r] < 0 || t >= lp.cols()) {
            throw ShapeMismatch("nll_sum: target id out of range");
        }
        total -= lp.at(r, t);
    }
    return push(Tensor::scalar(total), requires_grad(logprobs),
                [logprobs, targets = std::move(targets)](Graph& g,
                                                         NodeId self) {
                    if (!g.requires_grad(logprobs)) return;
                    const double go = g.grad(self)[0];
                    Tensor& gl = g.grad_buffer(logprobs);
                    for (size_t r = 0; r < targets.size(); ++r) {
                        gl.at(r, static_cast<size_t>(targets[r])) -= go;
                    }
                });
}

NodeId Graph::add_scaled(NodeId a, double ca, NodeId b, double cb) {
    const Tensor& ta = value(a);
    const Tensor& tb = value(b);
    if (!ta.same_shape(tb)) {
        throw ShapeMismatch("add_scaled: " + ta.shape_str() + " vs " +
                            tb.shape_str());
    }
    Tensor out = ta;
    for (size_t i = 0; i < out.data.size(); ++i) {
        out.data[i] = ca * ta.data[i] + cb * tb.data[i];
    }
    const bool rg = requires_grad(a) || requires_grad(b);
    return push(std::move(out), rg, [a, ca, b, cb](Graph& g, NodeId self) {
        const Tensor& go = g.grad(self);
        if (g.requires_grad(a)) {
            Tensor& ga = g.grad_buffer(a);
            for (size_t i = 0; i < ga.data.size(); ++i) {
                ga.data[i] += ca * go.data[i];
            }
        }
        if (g.requires_grad(b)) {
            Tensor& gb = g.grad_buffer(b);
            for (size_t i = 0; i < gb.data.size(); ++i) {
                gb.data[i] += cb * go.data[i];
            }
        }
    });
}

}  // namespace wenyan
