def _getCPUcount():
    import psutil

    return psutil.cpu_count() or 1
