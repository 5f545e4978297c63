// Copyright 2026 The hookinj Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef HOOKINJ_DECODING_BLOSSOM_HPP
#define HOOKINJ_DECODING_BLOSSOM_HPP

#include <algorithm>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <vector>

namespace hookinj {

struct WeightedEdge {
    int32_t u;
    int32_t v;
    int64_t weight;
};

/// Maximum-weight matching on a general graph with Edmonds' blossom algorithm and a primal-dual
/// update, O(n^3). With max_cardinality set, only maximum-cardinality matchings are considered.
/// Returns mate[v] (or -1). Weights are integers; they are doubled internally so every dual stays
/// integral.
class BlossomMatcher {
   public:
    std::vector<int32_t> solve(int32_t num_vertices, const std::vector<WeightedEdge> &input, bool max_cardinality) {
        n_ = num_vertices;
        edges_ = input;
        for (auto &e : edges_) {
            if (e.u == e.v || e.u < 0 || e.v < 0 || e.u >= n_ || e.v >= n_) {
                throw std::invalid_argument("bad matching edge");
            }
            e.weight *= 2;
        }
        if (edges_.empty() || n_ == 0) {
            return std::vector<int32_t>(n_, -1);
        }
        int64_t max_weight = 0;
        for (const auto &e : edges_) {
            max_weight = std::max(max_weight, e.weight);
        }
        size_t m = edges_.size();
        endpoint_.resize(2 * m);
        for (size_t k = 0; k < m; k++) {
            endpoint_[2 * k] = edges_[k].u;
            endpoint_[2 * k + 1] = edges_[k].v;
        }
        neighbend_.assign(n_, {});
        for (size_t k = 0; k < m; k++) {
            neighbend_[edges_[k].u].push_back(2 * (int32_t)k + 1);
            neighbend_[edges_[k].v].push_back(2 * (int32_t)k);
        }
        mate_.assign(n_, -1);
        label_.assign(2 * n_, 0);
        labelend_.assign(2 * n_, -1);
        inblossom_.resize(n_);
        for (int32_t v = 0; v < n_; v++) {
            inblossom_[v] = v;
        }
        blossomparent_.assign(2 * n_, -1);
        blossomchilds_.assign(2 * n_, {});
        blossombase_.assign(2 * n_, -1);
        for (int32_t v = 0; v < n_; v++) {
            blossombase_[v] = v;
        }
        blossomendps_.assign(2 * n_, {});
        bestedge_.assign(2 * n_, -1);
        blossombestedges_.assign(2 * n_, {});
        has_bestedges_.assign(2 * n_, false);
        unused_.clear();
        for (int32_t b = 2 * n_ - 1; b >= n_; b--) {
            unused_.push_back(b);
        }
        std::reverse(unused_.begin(), unused_.end());
        dualvar_.assign(2 * n_, 0);
        for (int32_t v = 0; v < n_; v++) {
            dualvar_[v] = max_weight;
        }
        allowedge_.assign(m, false);
        queue_.clear();

        for (int32_t stage = 0; stage < n_; stage++) {
            std::fill(label_.begin(), label_.end(), 0);
            std::fill(bestedge_.begin(), bestedge_.end(), -1);
            for (int32_t b = n_; b < 2 * n_; b++) {
                blossombestedges_[b].clear();
                has_bestedges_[b] = false;
            }
            std::fill(allowedge_.begin(), allowedge_.end(), false);
            queue_.clear();
            for (int32_t v = 0; v < n_; v++) {
                if (mate_[v] == -1 && label_[inblossom_[v]] == 0) {
                    assign_label(v, 1, -1);
                }
            }
            bool augmented = false;
            while (true) {
                while (!queue_.empty() && !augmented) {
                    int32_t v = queue_.back();
                    queue_.pop_back();
                    for (int32_t p : neighbend_[v]) {
                        int32_t k = p / 2;
                        int32_t w = endpoint_[p];
                        if (inblossom_[v] == inblossom_[w]) {
                            continue;
                        }
                        int64_t kslack = 0;
                        if (!allowedge_[k]) {
                            kslack = slack(k);
                            if (kslack <= 0) {
                                allowedge_[k] = true;
                            }
                        }
                        if (allowedge_[k]) {
                            if (label_[inblossom_[w]] == 0) {
                                assign_label(w, 2, p ^ 1);
                            } else if (label_[inblossom_[w]] == 1) {
                                int32_t base = scan_blossom(v, w);
                                if (base >= 0) {
                                    add_blossom(base, k);
                                } else {
                                    augment_matching(k);
                                    augmented = true;
                                    break;
                                }
                            } else if (label_[w] == 0) {
                                label_[w] = 2;
                                labelend_[w] = p ^ 1;
                            }
                        } else if (label_[inblossom_[w]] == 1) {
                            int32_t b = inblossom_[v];
                            if (bestedge_[b] == -1 || kslack < slack(bestedge_[b])) {
                                bestedge_[b] = k;
                            }
                        } else if (label_[w] == 0) {
                            if (bestedge_[w] == -1 || kslack < slack(bestedge_[w])) {
                                bestedge_[w] = k;
                            }
                        }
                    }
                }
                if (augmented) {
                    break;
                }
                int deltatype = -1;
                int64_t delta = 0;
                int32_t deltaedge = -1, deltablossom = -1;
                if (!max_cardinality) {
                    deltatype = 1;
                    delta = *std::min_element(dualvar_.begin(), dualvar_.begin() + n_);
                }
                for (int32_t v = 0; v < n_; v++) {
                    if (label_[inblossom_[v]] == 0 && bestedge_[v] != -1) {
                        int64_t d = slack(bestedge_[v]);
                        if (deltatype == -1 || d < delta) {
                            delta = d;
                            deltatype = 2;
                            deltaedge = bestedge_[v];
                        }
                    }
                }
                for (int32_t b = 0; b < 2 * n_; b++) {
                    if (blossomparent_[b] == -1 && label_[b] == 1 && bestedge_[b] != -1) {
                        int64_t d = slack(bestedge_[b]) / 2;
                        if (deltatype == -1 || d < delta) {
                            delta = d;
                            deltatype = 3;
                            deltaedge = bestedge_[b];
                        }
                    }
                }
                for (int32_t b = n_; b < 2 * n_; b++) {
                    if (blossombase_[b] >= 0 && blossomparent_[b] == -1 && label_[b] == 2 &&
                        (deltatype == -1 || dualvar_[b] < delta)) {
                        delta = dualvar_[b];
                        deltatype = 4;
                        deltablossom = b;
                    }
                }
                if (deltatype == -1) {
                    deltatype = 1;
                    delta = std::max<int64_t>(0, *std::min_element(dualvar_.begin(), dualvar_.begin() + n_));
                }
                for (int32_t v = 0; v < n_; v++) {
                    if (label_[inblossom_[v]] == 1) {
                        dualvar_[v] -= delta;
                    } else if (label_[inblossom_[v]] == 2) {
                        dualvar_[v] += delta;
                    }
                }
                for (int32_t b = n_; b < 2 * n_; b++) {
                    if (blossombase_[b] >= 0 && blossomparent_[b] == -1) {
                        if (label_[b] == 1) {
                            dualvar_[b] += delta;
                        } else if (label_[b] == 2) {
                            dualvar_[b] -= delta;
                        }
                    }
                }
                if (deltatype == 1) {
                    break;
                } else if (deltatype == 2) {
                    allowedge_[deltaedge] = true;
                    int32_t i = edges_[deltaedge].u, j = edges_[deltaedge].v;
                    if (label_[inblossom_[i]] == 0) {
                        std::swap(i, j);
                    }
                    queue_.push_back(i);
                } else if (deltatype == 3) {
                    allowedge_[deltaedge] = true;
                    queue_.push_back(edges_[deltaedge].u);
                } else {
                    expand_blossom(deltablossom, false);
                }
            }
            if (!augmented) {
                break;
            }
            for (int32_t b = n_; b < 2 * n_; b++) {
                if (blossomparent_[b] == -1 && blossombase_[b] >= 0 && label_[b] == 1 && dualvar_[b] == 0) {
                    expand_blossom(b, true);
                }
            }
        }
        std::vector<int32_t> out(n_, -1);
        for (int32_t v = 0; v < n_; v++) {
            if (mate_[v] >= 0) {
                out[v] = endpoint_[mate_[v]];
            }
        }
        return out;
    }

   private:
    int64_t slack(int32_t k) const {
        const auto &e = edges_[k];
        return dualvar_[e.u] + dualvar_[e.v] - 2 * e.weight;
    }

    template <typename F>
    void for_leaves(int32_t b, F &&f) const {
        if (b < n_) {
            f(b);
            return;
        }
        for (int32_t t : blossomchilds_[b]) {
            for_leaves(t, f);
        }
    }

    void assign_label(int32_t w, int t, int32_t p) {
        int32_t b = inblossom_[w];
        label_[w] = label_[b] = t;
        labelend_[w] = labelend_[b] = p;
        bestedge_[w] = bestedge_[b] = -1;
        if (t == 1) {
            for_leaves(b, [&](int32_t v) { queue_.push_back(v); });
        } else if (t == 2) {
            int32_t base = blossombase_[b];
            assign_label(endpoint_[mate_[base]], 1, mate_[base] ^ 1);
        }
    }

    int32_t scan_blossom(int32_t v, int32_t w) {
        std::vector<int32_t> path;
        int32_t base = -1;
        while (v != -1 || w != -1) {
            int32_t b = inblossom_[v];
            if (label_[b] & 4) {
                base = blossombase_[b];
                break;
            }
            path.push_back(b);
            label_[b] = 5;
            if (labelend_[b] == -1) {
                v = -1;
            } else {
                v = endpoint_[labelend_[b]];
                b = inblossom_[v];
                v = endpoint_[labelend_[b]];
            }
            if (w != -1) {
                std::swap(v, w);
            }
        }
        for (int32_t b : path) {
            label_[b] = 1;
        }
        return base;
    }

    void add_blossom(int32_t base, int32_t k) {
        int32_t v = edges_[k].u, w = edges_[k].v;
        int32_t bb = inblossom_[base];
        int32_t bv = inblossom_[v];
        int32_t bw = inblossom_[w];
        int32_t b = unused_.back();
        unused_.pop_back();
        blossombase_[b] = base;
        blossomparent_[b] = -1;
        blossomparent_[bb] = b;
        std::vector<int32_t> path, endps;
        while (bv != bb) {
            blossomparent_[bv] = b;
            path.push_back(bv);
            endps.push_back(labelend_[bv]);
            v = endpoint_[labelend_[bv]];
            bv = inblossom_[v];
        }
        path.push_back(bb);
        std::reverse(path.begin(), path.end());
        std::reverse(endps.begin(), endps.end());
        endps.push_back(2 * k);
        while (bw != bb) {
            blossomparent_[bw] = b;
            path.push_back(bw);
            endps.push_back(labelend_[bw] ^ 1);
            w = endpoint_[labelend_[bw]];
            bw = inblossom_[w];
        }
        blossomchilds_[b] = path;
        blossomendps_[b] = endps;
        label_[b] = 1;
        labelend_[b] = labelend_[bb];
        dualvar_[b] = 0;
        for_leaves(b, [&](int32_t leaf) {
            if (label_[inblossom_[leaf]] == 2) {
                queue_.push_back(leaf);
            }
            inblossom_[leaf] = b;
        });
        std::vector<int32_t> bestedgeto(2 * n_, -1);
        for (int32_t sub : path) {
            std::vector<std::vector<int32_t>> nblists;
            if (!has_bestedges_[sub]) {
                for_leaves(sub, [&](int32_t leaf) {
                    std::vector<int32_t> l;
                    for (int32_t p : neighbend_[leaf]) {
                        l.push_back(p / 2);
                    }
                    nblists.push_back(std::move(l));
                });
            } else {
                nblists.push_back(blossombestedges_[sub]);
            }
            for (const auto &nblist : nblists) {
                for (int32_t kk : nblist) {
                    int32_t i = edges_[kk].u, j = edges_[kk].v;
                    if (inblossom_[j] == b) {
                        std::swap(i, j);
                    }
                    int32_t bj = inblossom_[j];
                    if (bj != b && label_[bj] == 1 && (bestedgeto[bj] == -1 || slack(kk) < slack(bestedgeto[bj]))) {
                        bestedgeto[bj] = kk;
                    }
                }
            }
            blossombestedges_[sub].clear();
            has_bestedges_[sub] = false;
            bestedge_[sub] = -1;
        }
        blossombestedges_[b].clear();
        for (int32_t kk : bestedgeto) {
            if (kk != -1) {
                blossombestedges_[b].push_back(kk);
            }
        }
        has_bestedges_[b] = true;
        bestedge_[b] = -1;
        for (int32_t kk : blossombestedges_[b]) {
            if (bestedge_[b] == -1 || slack(kk) < slack(bestedge_[b])) {
                bestedge_[b] = kk;
            }
        }
    }

    void expand_blossom(int32_t b, bool endstage) {
        std::vector<int32_t> childs = blossomchilds_[b];
        for (int32_t s : childs) {
            blossomparent_[s] = -1;
            if (s < n_) {
                inblossom_[s] = s;
            } else if (endstage && dualvar_[s] == 0) {
                expand_blossom(s, endstage);
            } else {
                for_leaves(s, [&](int32_t leaf) { inblossom_[leaf] = s; });
            }
        }
        if (!endstage && label_[b] == 2) {
            const auto &ch = blossomchilds_[b];
            const auto &ep = blossomendps_[b];
            int32_t len = (int32_t)ch.size();
            auto at = [len](const std::vector<int32_t> &vec, int32_t idx) {
                return vec[((idx % len) + len) % len];
            };
            int32_t entrychild = inblossom_[endpoint_[labelend_[b] ^ 1]];
            int32_t j = (int32_t)(std::find(ch.begin(), ch.end(), entrychild) - ch.begin());
            int32_t jstep, endptrick;
            if (j & 1) {
                j -= len;
                jstep = 1;
                endptrick = 0;
            } else {
                jstep = -1;
                endptrick = 1;
            }
            int32_t p = labelend_[b];
            while (j != 0) {
                label_[endpoint_[p ^ 1]] = 0;
                label_[endpoint_[at(ep, j - endptrick) ^ endptrick ^ 1]] = 0;
                assign_label(endpoint_[p ^ 1], 2, p);
                allowedge_[at(ep, j - endptrick) / 2] = true;
                j += jstep;
                p = at(ep, j - endptrick) ^ endptrick;
                allowedge_[p / 2] = true;
                j += jstep;
            }
            int32_t bv = at(ch, j);
            label_[endpoint_[p ^ 1]] = label_[bv] = 2;
            labelend_[endpoint_[p ^ 1]] = labelend_[bv] = p;
            bestedge_[bv] = -1;
            j += jstep;
            while (at(ch, j) != entrychild) {
                bv = at(ch, j);
                if (label_[bv] == 1) {
                    j += jstep;
                    continue;
                }
                int32_t found = -1;
                for_leaves(bv, [&](int32_t leaf) {
                    if (found == -1 && label_[leaf] != 0) {
                        found = leaf;
                    }
                });
                if (found != -1) {
                    label_[found] = 0;
                    label_[endpoint_[mate_[blossombase_[bv]]]] = 0;
                    assign_label(found, 2, labelend_[found]);
                }
                j += jstep;
            }
        }
        label_[b] = labelend_[b] = -1;
        blossomchilds_[b].clear();
        blossomendps_[b].clear();
        blossombase_[b] = -1;
        blossombestedges_[b].clear();
        has_bestedges_[b] = false;
        bestedge_[b] = -1;
        unused_.push_back(b);
    }

    void augment_blossom(int32_t b, int32_t v) {
        int32_t t = v;
        while (blossomparent_[t] != b) {
            t = blossomparent_[t];
        }
        if (t >= n_) {
            augment_blossom(t, v);
        }
        auto &ch = blossomchilds_[b];
        auto &ep = blossomendps_[b];
        int32_t len = (int32_t)ch.size();
        auto idx = [len](int32_t k) { return ((k % len) + len) % len; };
        int32_t i = (int32_t)(std::find(ch.begin(), ch.end(), t) - ch.begin());
        int32_t j = i;
        int32_t jstep, endptrick;
        if (i & 1) {
            j -= len;
            jstep = 1;
            endptrick = 0;
        } else {
            jstep = -1;
            endptrick = 1;
        }
        while (j != 0) {
            j += jstep;
            t = ch[idx(j)];
            int32_t p = ep[idx(j - endptrick)] ^ endptrick;
            if (t >= n_) {
                augment_blossom(t, endpoint_[p]);
            }
            j += jstep;
            t = ch[idx(j)];
            if (t >= n_) {
                augment_blossom(t, endpoint_[p ^ 1]);
            }
            mate_[endpoint_[p]] = p ^ 1;
            mate_[endpoint_[p ^ 1]] = p;
        }
        std::rotate(ch.begin(), ch.begin() + i, ch.end());
        std::rotate(ep.begin(), ep.begin() + i, ep.end());
        blossombase_[b] = blossombase_[ch[0]];
    }

    void augment_matching(int32_t k) {
        int32_t v = edges_[k].u, w = edges_[k].v;
        const std::pair<int32_t, int32_t> starts[2] = {{v, 2 * k + 1}, {w, 2 * k}};
        for (auto [s, p] : starts) {
            while (true) {
                int32_t bs = inblossom_[s];
                if (bs >= n_) {
                    augment_blossom(bs, s);
                }
                mate_[s] = p;
                if (labelend_[bs] == -1) {
                    break;
                }
                int32_t t = endpoint_[labelend_[bs]];
                int32_t bt = inblossom_[t];
                s = endpoint_[labelend_[bt]];
                int32_t j = endpoint_[labelend_[bt] ^ 1];
                if (bt >= n_) {
                    augment_blossom(bt, j);
                }
                mate_[j] = labelend_[bt];
                p = labelend_[bt] ^ 1;
            }
        }
    }

    int32_t n_ = 0;
    std::vector<WeightedEdge> edges_;
    std::vector<int32_t> endpoint_;
    std::vector<std::vector<int32_t>> neighbend_;
    std::vector<int32_t> mate_, label_, labelend_, inblossom_, blossomparent_, blossombase_, bestedge_;
    std::vector<std::vector<int32_t>> blossomchilds_, blossomendps_, blossombestedges_;
    std::vector<bool> has_bestedges_;
    std::vector<int32_t> unused_;
    std::vector<int64_t> dualvar_;
    std::vector<bool> allowedge_;
    std::vector<int32_t> queue_;
};

}  // namespace hookinj

#endif
