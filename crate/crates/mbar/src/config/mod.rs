//! Plane point-configurations, collinearity combinatorics, and the blow-up class compiler.
