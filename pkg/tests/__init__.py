"""
Test Suite for the Prophet Game Engine
"""
