"""Search kernel selection.

The compiled extension is used when it imported cleanly; otherwise the
pure-Python kernel takes over with identical semantics. TEMBED_KERNEL set
to "python" or "compiled" forces the choice (forcing "compiled" without a
built extension raises at import, loudly, instead of silently degrading).
"""

import os

_forced = os.environ.get("TEMBED_KERNEL", "").strip().lower()

if _forced == "python":
    from . import _kernel_py as _impl
elif _forced in ("compiled", "c", "cython"):
    from . import _kernel as _impl  # type: ignore[no-redef]
elif _forced:
    raise ImportError(f"TEMBED_KERNEL={_forced!r}: expected 'python' or 'compiled'")
else:
    try:
        from . import _kernel as _impl  # type: ignore[no-redef]
    except ImportError:
        from . import _kernel_py as _impl

KERNEL_NAME: str = _impl.KERNEL_NAME
search = _impl.search
lp_bound = _impl.lp_bound


def available_kernels() -> list[str]:
    names = ["python"]
    try:
        from . import _kernel  # noqa: F401

        names.append(_kernel.KERNEL_NAME)
    except ImportError:
        pass
    return names


def load_kernel(name: str):
    """Fetch a kernel module by name for side-by-side comparisons."""
    if name == "python":
        from . import _kernel_py

        return _kernel_py
    from . import _kernel

    if _kernel.KERNEL_NAME != name:
        raise ImportError(f"unknown kernel {name!r}")
    return _kernel
