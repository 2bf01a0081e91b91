"""Domain layer containing the core business logic and entities."""