"""Plain-text file formats"""
