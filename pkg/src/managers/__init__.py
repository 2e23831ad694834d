"""
managers — High-level orchestrators that wire handlers together.

Modules:
    stability — StabilityAnalyzer (subrep search, semistability, HN filtration)
    kempf     — KempfAnalyzer (Hilbert-Mumford criterion, Kempf filtration)
    verify    — VerifyManager (Kempf = HN checks, exhaustive scans)
    commands  — CommandManager (CLI dispatch and reports)
"""
