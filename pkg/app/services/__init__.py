"""Solvers, bounds and the theorem harness"""
