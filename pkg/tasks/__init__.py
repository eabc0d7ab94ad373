"""CLI tasks; each module exposes run(job) -> exit status."""
