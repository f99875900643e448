"""Intersection-typed lambda calculus with strong pairs and explicit coercions."""
