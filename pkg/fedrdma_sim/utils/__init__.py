"""
Utils Module: wire codec, chunking, report saving and display
"""
