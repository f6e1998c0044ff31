"""JIT switch.

Kernels are decorated with :func:`njit` from this module. Setting the
environment variable ``LOCALDOM_DISABLE_JIT=1`` before import swaps numba
for an identity decorator so every kernel runs as plain Python over numpy
arrays (slow, but steppable in a debugger).
"""
import os

JIT_ENABLED = os.environ.get("LOCALDOM_DISABLE_JIT", "0").lower() not in ("1", "true", "yes")

if JIT_ENABLED:
    try:
        from numba import njit as _numba_njit
    except ImportError:  # pragma: no cover - numba is a hard dependency
        JIT_ENABLED = False

if JIT_ENABLED:

    def njit(func=None, **kwargs):
        kwargs.setdefault("cache", True)
        if func is not None:
            return _numba_njit(**kwargs)(func)
        return _numba_njit(**kwargs)

else:

    def njit(func=None, **kwargs):
        if func is not None:
            return func

        def wrapper(f):
            return f

        return wrapper


def python_impl(kernel):
    """Return the undecorated Python function behind a kernel."""
    return getattr(kernel, "py_func", kernel)
