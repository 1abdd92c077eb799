"""k-chord pancyclicity engine package"""
