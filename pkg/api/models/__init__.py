# API models package