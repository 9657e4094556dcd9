"""
Tests for dilaton_discord.
"""
