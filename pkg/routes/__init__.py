"""
API Routes
Health plus the analysis endpoints over the solvers
"""
