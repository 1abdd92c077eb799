"""HTTP routers: diagrams, bounds, search and relativity."""
