public static HashSet<String> createSetFromProperty(String property) {...
    if (property != null && !property.equals("null")) { 
    // "([\\w]*)=([\\w]*);"
    Pattern params =     Pattern.compile("([\\w]+)[;]*");
    ...}
