"""Exact-arithmetic engine: admissibility, group catalog, eliminations, verification"""
