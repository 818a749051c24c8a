public String getString (int columnPosition) throws 
SQLException {
    return (String) resultSet.getObject(columnPosition);
    }
