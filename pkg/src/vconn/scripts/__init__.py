"""Command line entry points for vconn"""
