"""Fractional-dissipation Boussinesq solver and a priori estimate checks."""
