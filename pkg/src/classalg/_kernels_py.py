"""Pure-Python versions of the table scans in ``_kernels.pyx``."""


def _ints(a):
    return a.tolist() if hasattr(a, "tolist") else list(a)


def respects(table, dims, arg_cls, offsets, ncls, res_cls):
    """First pair of flat indices whose arguments are classwise equal but whose
    results land in different classes, or ``(-1, -1)``."""
    table, dims, arg_cls, offsets, ncls, res_cls = map(
        _ints, (table, dims, arg_cls, offsets, ncls, res_cls))
    arity = len(dims)
    seen = {}
    for idx in range(len(table)):
        rem = idx
        key = 0
        for k in range(arity - 1, -1, -1):
            rem, d = divmod(rem, dims[k])
            key = key * ncls[k] + arg_cls[offsets[k] + d]
        first = seen.setdefault(key, idx)
        if first != idx and res_cls[table[first]] != res_cls[table[idx]]:
            return first, idx
    return -1, -1


def hom_violation(table_a, dims_a, table_b, dims_b, fcat, foffsets, fres, cls_b):
    """First flat index of ``table_a`` where ``f(op_a(xs)) != op_b(f(xs))`` up to
    the classes ``cls_b``, or ``-1``."""
    table_a, dims_a, table_b, dims_b, fcat, foffsets, fres, cls_b = map(
        _ints, (table_a, dims_a, table_b, dims_b, fcat, foffsets, fres, cls_b))
    arity = len(dims_a)
    for idx in range(len(table_a)):
        rem = idx
        idx_b = 0
        stride = 1
        for k in range(arity - 1, -1, -1):
            rem, d = divmod(rem, dims_a[k])
            idx_b += fcat[foffsets[k] + d] * stride
            stride *= dims_b[k]
        if cls_b[fres[table_a[idx]]] != cls_b[table_b[idx_b]]:
            return idx
    return -1
