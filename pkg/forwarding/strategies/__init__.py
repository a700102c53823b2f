"""
Built-in forwarding strategies.
"""
