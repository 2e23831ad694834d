"""
handlers — Low-level exact-arithmetic and I/O components.

Modules:
    field           — Field (Q or F_p), scalar coercion and formatting
    matrix          — Matrix (object-array entries), rref
    subspace        — Subspace (canonical RREF), enumeration over F_p
    quiver          — Quiver, DimensionVector, StabilityWeights, slope
    representation  — Representation, Subrepresentation, quotients, WeightedFiltration
    envelope        — WeightVectorData, concave majorant, Γ_v, KempfValue
    hilbert_mumford — character exponents, 1-PS weights, numerical function
    problem_file    — JSON problems and report payloads
    figure          — envelope CSV tables and SVG drawings
"""
