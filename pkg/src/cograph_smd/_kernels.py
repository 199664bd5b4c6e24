"""Compiled linear passes over post-order co-tree arrays.

Every kernel takes the flat tree layout used by :class:`cograph_smd.cotree.CoTree`:
``kinds[k]`` is the node kind, the children of node ``k`` are
``child_idx[child_ptr[k]:child_ptr[k + 1]]`` and always have smaller indices
than ``k``, and the root is the last node.
"""
import numpy as np
from numba import njit

LEAF, UNION, JOIN, DIR_JOIN = 0, 1, 2, 3

# clique-vector slots
M, S, I, O, SI, SO = 0, 1, 2, 3, 4, 5
NSLOTS = 6

# dir_join s-rule variants
EXTENDED, PROSE_DERIVED, AS_PRINTED = 0, 1, 2

# which maximand produced m at a node
RULE_LEAF = 0
RULE_UNION_LEFT, RULE_UNION_RIGHT = 1, 2
RULE_DJOIN_LEFT, RULE_DJOIN_RIGHT = 3, 4
RULE_JOIN_ML_SR, RULE_JOIN_MR_SL = 5, 6
RULE_JOIN_IL_IR, RULE_JOIN_OL_OR = 7, 8
RULE_JOIN_SIL_SIR, RULE_JOIN_SOL_SOR = 9, 10
RULE_NAMES = (
    "leaf",
    "union:m_l",
    "union:m_r",
    "dir_join:m_l",
    "dir_join:m_r",
    "join:m_l+s_r",
    "join:m_r+s_l",
    "join:i_l+i_r",
    "join:o_l+o_r",
    "join:si_l+si_r",
    "join:so_l+so_r",
)


@njit(cache=True)
def leaf_spans(kinds, child_ptr, child_idx):
    """Half-open ranges of leaf positions below every node."""
    n = kinds.shape[0]
    lo = np.empty(n, np.int64)
    hi = np.empty(n, np.int64)
    nleaf = 0
    for k in range(n):
        if kinds[k] == LEAF:
            lo[k] = nleaf
            nleaf += 1
            hi[k] = nleaf
        else:
            lo[k] = lo[child_idx[child_ptr[k]]]
            hi[k] = hi[child_idx[child_ptr[k + 1] - 1]]
    return lo, hi


@njit(cache=True)
def parents(child_ptr, child_idx, n):
    par = np.full(n, -1, np.int64)
    for k in range(n):
        for p in range(child_ptr[k], child_ptr[k + 1]):
            par[child_idx[p]] = k
    return par


@njit(cache=True)
def flatten_same_kind(kinds, child_ptr, child_idx, leaf_index):
    """Merge every internal node into its parent when both have the same kind.

    Children lists are spliced in order, so the directed-join order survives.
    Returns the arrays of the contracted tree, still in post-order.
    """
    n = kinds.shape[0]
    par = parents(child_ptr, child_idx, n)
    absorbed = np.zeros(n, np.bool_)
    for k in range(n):
        if kinds[k] != LEAF and par[k] >= 0 and kinds[par[k]] == kinds[k]:
            absorbed[k] = True
    head = np.full(n, -1, np.int64)
    tail = np.full(n, -1, np.int64)
    nxt = np.full(n, -1, np.int64)
    for k in range(n):
        if kinds[k] == LEAF:
            continue
        for p in range(child_ptr[k], child_ptr[k + 1]):
            c = child_idx[p]
            if absorbed[c]:
                h, t = head[c], tail[c]
            else:
                h, t = c, c
            if head[k] == -1:
                head[k] = h
            else:
                nxt[tail[k]] = h
            tail[k] = t
    newid = np.full(n, -1, np.int64)
    m = 0
    for k in range(n):
        if not absorbed[k]:
            newid[k] = m
            m += 1
    out_kinds = np.empty(m, np.int8)
    out_leaf = np.empty(m, np.int64)
    out_ptr = np.zeros(m + 1, np.int64)
    out_idx = np.empty(child_idx.shape[0], np.int64)
    q = 0
    for k in range(n):
        if absorbed[k]:
            continue
        j = newid[k]
        out_kinds[j] = kinds[k]
        out_leaf[j] = leaf_index[k]
        out_ptr[j] = q
        if kinds[k] != LEAF:
            c = head[k]
            while c != -1:
                out_idx[q] = newid[c]
                q += 1
                if c == tail[k]:
                    break
                c = nxt[c]
        out_ptr[j + 1] = q
    return out_kinds, out_ptr, out_idx[:q].copy(), out_leaf


@njit(cache=True)
def random_binary_tree(n_leaves, split_u, kind_draw):
    """Binary tree with uniform random leaf-count splits.

    Internal nodes consume ``split_u``/``kind_draw`` in pre-order, so entry 0
    belongs to the root. Nodes are written in post-order.
    """
    total = 2 * n_leaves - 1
    kinds = np.empty(total, np.int8)
    leaf_index = np.full(total, -1, np.int64)
    child_ptr = np.zeros(total + 1, np.int64)
    child_idx = np.empty(2 * (n_leaves - 1), np.int64)
    st_size = np.empty(total, np.int64)
    st_left = np.empty(total, np.int64)
    st_stage = np.empty(total, np.int64)
    st_draw = np.empty(total, np.int64)
    st_lid = np.empty(total, np.int64)
    top = 0
    st_size[0] = n_leaves
    st_stage[0] = 0
    pos = 0
    nleaf = 0
    ndraw = 0
    cpos = 0
    ret = -1
    while top >= 0:
        size = st_size[top]
        if size == 1:
            kinds[pos] = LEAF
            leaf_index[pos] = nleaf
            nleaf += 1
            child_ptr[pos] = cpos
            child_ptr[pos + 1] = cpos
            ret = pos
            pos += 1
            top -= 1
            continue
        stage = st_stage[top]
        if stage == 0:
            d = ndraw
            ndraw += 1
            left = 1 + int(split_u[d] * (size - 1))
            if left > size - 1:
                left = size - 1
            st_draw[top] = d
            st_left[top] = left
            st_stage[top] = 1
            top += 1
            st_size[top] = left
            st_stage[top] = 0
        elif stage == 1:
            st_lid[top] = ret
            st_stage[top] = 2
            right = size - st_left[top]
            top += 1
            st_size[top] = right
            st_stage[top] = 0
        else:
            kinds[pos] = kind_draw[st_draw[top]]
            child_ptr[pos] = cpos
            child_idx[cpos] = st_lid[top]
            child_idx[cpos + 1] = ret
            cpos += 2
            child_ptr[pos + 1] = cpos
            ret = pos
            pos += 1
            top -= 1
    return kinds, child_ptr, child_idx, leaf_index


# token codes for serialization: >= 0 is a leaf label index
TOK_OPEN_U, TOK_OPEN_J, TOK_OPEN_D, TOK_COMMA, TOK_CLOSE = -1, -2, -3, -4, -5


@njit(cache=True)
def token_stream(kinds, child_ptr, child_idx, leaf_index):
    n = kinds.shape[0]
    ntok = 0
    for k in range(n):
        if kinds[k] == LEAF:
            ntok += 1
        else:
            ntok += 1 + (child_ptr[k + 1] - child_ptr[k])  # open, commas, close
    out = np.empty(ntok, np.int64)
    st_node = np.empty(n, np.int64)
    st_pos = np.empty(n, np.int64)
    top = 0
    st_node[0] = n - 1
    st_pos[0] = -1
    q = 0
    while top >= 0:
        k = st_node[top]
        if kinds[k] == LEAF:
            out[q] = leaf_index[k]
            q += 1
            top -= 1
            continue
        p = st_pos[top]
        if p == -1:
            out[q] = -kinds[k]
            q += 1
            p = child_ptr[k]
        elif p < child_ptr[k + 1]:
            out[q] = TOK_COMMA
            q += 1
        if p == child_ptr[k + 1]:
            out[q] = TOK_CLOSE
            q += 1
            top -= 1
            continue
        st_pos[top] = p + 1
        top += 1
        st_node[top] = child_idx[p]
        st_pos[top] = -1
    return out


@njit(cache=True)
def max_twinless_clique_dp(kinds, child_ptr, child_idx):
    """Bottom-up value of the twin-free clique recursion on a canonical tree.

    ``pick[k]`` is the chosen child of a union node (first maximum).
    """
    n = kinds.shape[0]
    val = np.zeros(n, np.int64)
    pick = np.full(n, -1, np.int64)
    for k in range(n):
        kind = kinds[k]
        if kind == LEAF:
            val[k] = 1
        elif kind == UNION:
            best = -1
            for p in range(child_ptr[k], child_ptr[k + 1]):
                c = child_idx[p]
                if val[c] > best:
                    best = val[c]
                    pick[k] = c
            val[k] = best
        else:
            s = 0
            t = 0
            for p in range(child_ptr[k], child_ptr[k + 1]):
                c = child_idx[p]
                if kinds[c] == LEAF:
                    t = 1
                else:
                    s += val[c]
            val[k] = s + t
    return val, pick


@njit(cache=True)
def twinless_witness(kinds, child_ptr, child_idx, leaf_index, pick, root):
    n = kinds.shape[0]
    stack = np.empty(n, np.int64)
    out = np.empty(n, np.int64)
    q = 0
    top = 0
    stack[0] = root
    while top >= 0:
        k = stack[top]
        top -= 1
        kind = kinds[k]
        if kind == LEAF:
            out[q] = leaf_index[k]
            q += 1
        elif kind == UNION:
            top += 1
            stack[top] = pick[k]
        else:
            leaf_taken = False
            for p in range(child_ptr[k], child_ptr[k + 1]):
                c = child_idx[p]
                if kinds[c] == LEAF:
                    if leaf_taken:
                        continue
                    leaf_taken = True
                top += 1
                stack[top] = c
    return np.sort(out[:q])


@njit(cache=True)
def clique_vector_dp(kinds, child_ptr, child_idx, variant):
    """Six-slot clique-vector recursion on a binary co-tree.

    Slots hold maximum clique sizes in the complement of the strong resolving
    graph restricted to: all vertices (M); solitary or in-out vertices (S);
    in-vertices (I); out-vertices (O); solitary or in-vertices (SI); solitary
    or out-vertices (SO). ``src_l[k, t]``/``src_r[k, t]`` name the child slot
    whose witness forms slot ``t`` of node ``k`` (-1 when that side is unused).
    ``variant`` picks the dir_join s-rule and the join m-rule family.
    """
    n = kinds.shape[0]
    val = np.zeros((n, NSLOTS), np.int64)
    src_l = np.full((n, NSLOTS), -1, np.int8)
    src_r = np.full((n, NSLOTS), -1, np.int8)
    mrule = np.zeros(n, np.int8)
    for k in range(n):
        kind = kinds[k]
        if kind == LEAF:
            val[k, M] = 1
            mrule[k] = RULE_LEAF
            continue
        if child_ptr[k + 1] - child_ptr[k] != 2:
            raise ValueError("clique_vector_dp needs a binary co-tree")
        lc = child_idx[child_ptr[k]]
        rc = child_idx[child_ptr[k] + 1]
        ml, sl, il, ol, sil, sol = val[lc, 0], val[lc, 1], val[lc, 2], val[lc, 3], val[lc, 4], val[lc, 5]
        mr, sr, ir, orr, sir, sor = val[rc, 0], val[rc, 1], val[rc, 2], val[rc, 3], val[rc, 4], val[rc, 5]
        if kind == UNION:
            if mr > ml:
                val[k, M] = mr
                src_r[k, M] = M
                mrule[k] = RULE_UNION_RIGHT
            else:
                val[k, M] = ml
                src_l[k, M] = M
                mrule[k] = RULE_UNION_LEFT
            # every vertex becomes solitary
            for t in (S, SI, SO):
                val[k, t] = val[k, M]
                src_l[k, t] = src_l[k, M]
                src_r[k, t] = src_r[k, M]
            if ir > il:
                val[k, I] = ir
                src_r[k, I] = I
            else:
                val[k, I] = il
                src_l[k, I] = I
            if orr > ol:
                val[k, O] = orr
                src_r[k, O] = O
            else:
                val[k, O] = ol
                src_l[k, O] = O
        elif kind == DIR_JOIN:
            if mr > ml:
                val[k, M] = mr
                src_r[k, M] = M
                mrule[k] = RULE_DJOIN_RIGHT
            else:
                val[k, M] = ml
                src_l[k, M] = M
                mrule[k] = RULE_DJOIN_LEFT
            # s: first maximum among the variant's candidates, listing order
            if variant == EXTENDED:
                if sor > sil:
                    val[k, S] = sor
                    src_r[k, S] = SO
                else:
                    val[k, S] = sil
                    src_l[k, S] = SI
            else:
                best = sl
                bside = 0
                bslot = S
                if sr > best:
                    best, bside, bslot = sr, 1, S
                if variant == PROSE_DERIVED:
                    if il > best:
                        best, bside, bslot = il, 0, I
                    if orr > best:
                        best, bside, bslot = orr, 1, O
                else:
                    if ir > best:
                        best, bside, bslot = ir, 1, I
                    if ol > best:
                        best, bside, bslot = ol, 0, O
                val[k, S] = best
                if bside == 0:
                    src_l[k, S] = bslot
                else:
                    src_r[k, S] = bslot
            # right side all become in-vertices, left side out-vertices
            if il > mr:
                val[k, I] = il
                src_l[k, I] = I
            else:
                val[k, I] = mr
                src_r[k, I] = M
            if orr > ml:
                val[k, O] = orr
                src_r[k, O] = O
            else:
                val[k, O] = ml
                src_l[k, O] = M
            if mr > sil:
                val[k, SI] = mr
                src_r[k, SI] = M
            else:
                val[k, SI] = sil
                src_l[k, SI] = SI
            if sor > ml:
                val[k, SO] = sor
                src_r[k, SO] = SO
            else:
                val[k, SO] = ml
                src_l[k, SO] = M
        else:
            if variant == EXTENDED:
                c3, c3l, c3r, r3 = sil + sir, SI, SI, RULE_JOIN_SIL_SIR
                c4, c4l, c4r, r4 = sol + sor, SO, SO, RULE_JOIN_SOL_SOR
            else:
                c3, c3l, c3r, r3 = il + ir, I, I, RULE_JOIN_IL_IR
                c4, c4l, c4r, r4 = ol + orr, O, O, RULE_JOIN_OL_OR
            best, bl, br, brule = ml + sr, M, S, RULE_JOIN_ML_SR
            if mr + sl > best:
                best, bl, br, brule = mr + sl, S, M, RULE_JOIN_MR_SL
            if c3 > best:
                best, bl, br, brule = c3, c3l, c3r, r3
            if c4 > best:
                best, bl, br, brule = c4, c4l, c4r, r4
            val[k, M] = best
            src_l[k, M] = bl
            src_r[k, M] = br
            mrule[k] = brule
            for t in (S, I, O, SI, SO):
                val[k, t] = val[lc, t] + val[rc, t]
                src_l[k, t] = t
                src_r[k, t] = t
    return val, src_l, src_r, mrule


@njit(cache=True)
def clique_witness(kinds, child_ptr, child_idx, leaf_index, src_l, src_r, node, slot):
    """Leaf label indices of the witness set for ``slot`` at ``node``."""
    n = kinds.shape[0]
    st_node = np.empty(n, np.int64)
    st_slot = np.empty(n, np.int64)
    out = np.empty(n, np.int64)
    q = 0
    top = 0
    st_node[0] = node
    st_slot[0] = slot
    while top >= 0:
        k = st_node[top]
        t = st_slot[top]
        top -= 1
        if kinds[k] == LEAF:
            if t == M:
                out[q] = leaf_index[k]
                q += 1
            continue
        a = src_l[k, t]
        b = src_r[k, t]
        if a >= 0:
            top += 1
            st_node[top] = child_idx[child_ptr[k]]
            st_slot[top] = a
        if b >= 0:
            top += 1
            st_node[top] = child_idx[child_ptr[k] + 1]
            st_slot[top] = b
    return np.sort(out[:q])


@njit(cache=True)
def subtree_sizes(kinds, child_ptr, child_idx):
    n = kinds.shape[0]
    size = np.ones(n, np.int64)
    for k in range(n):
        for p in range(child_ptr[k], child_ptr[k + 1]):
            size[k] += size[child_idx[p]]
    return size


@njit(cache=True)
def is_postorder(child_ptr, child_idx, size):
    """Children of ``k`` occupy consecutive blocks ending at ``k - 1``."""
    n = size.shape[0]
    if size[n - 1] != n:
        return False
    for k in range(n):
        a, b = child_ptr[k], child_ptr[k + 1]
        if a == b:
            continue
        if child_idx[b - 1] != k - 1:
            return False
        for p in range(a, b - 1):
            c, d = child_idx[p], child_idx[p + 1]
            if d - size[d] != c:
                return False
        if child_idx[a] - size[child_idx[a]] != k - size[k]:
            return False
    return True
